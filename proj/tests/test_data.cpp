#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "snelfs/csv.hpp"
#include "snelfs/dataset.hpp"
#include "snelfs/generators.hpp"
#include "support/oracles.hpp"

using namespace snelfs;

namespace {

std::filesystem::path temp_csv(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("snelfs_test_" + name + ".csv");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

double pearson(const Vector& a, const Vector& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) { ma += a[i]; mb += b[i]; }
    ma /= n; mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

} // namespace

TEST_CASE("standardizer uses population moments") {
    Matrix x(3, 1, {1.0, 2.0, 3.0});
    Standardizer s = standardize_fit(x);
    CHECK(s.means[0] == doctest::Approx(2.0).epsilon(1e-15));
    // Population std of {1,2,3} is sqrt(2/3), not the sample sqrt(1).
    CHECK(s.stds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));

    Matrix probe(1, 1, {3.0});
    Matrix z = standardize_apply(s, probe);
    CHECK(z(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0 / 3.0)).epsilon(1e-15));

    Matrix back = standardize_invert(s, z);
    CHECK(back(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("standardizer clamps constant columns") {
    Matrix x(4, 2, {5, 1, 5, 2, 5, 3, 5, 4});
    Standardizer s = standardize_fit(x);
    REQUIRE(s.constant_features.size() == 1);
    CHECK(s.constant_features[0] == 0);
    CHECK(s.stds[0] == 1.0);
    Matrix z = standardize_apply(s, x);
    CHECK(z(0, 0) == 0.0);
    CHECK(z(3, 0) == 0.0);
}

TEST_CASE("standardized columns have zero mean and unit variance") {
    auto g = gen_linreg({.seed = 11, .n_samples = 50, .n_features = 4, .n_informative = 2});
    Standardizer s = standardize_fit(g.data.x);
    Matrix z = standardize_apply(s, g.data.x);
    for (std::size_t j = 0; j < z.cols; ++j) {
        double mean = 0, var = 0;
        for (std::size_t i = 0; i < z.rows; ++i) mean += z(i, j);
        mean /= static_cast<double>(z.rows);
        for (std::size_t i = 0; i < z.rows; ++i) var += (z(i, j) - mean) * (z(i, j) - mean);
        var /= static_cast<double>(z.rows);
        CHECK(std::abs(mean) < 1e-12);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("split is deterministic, disjoint and covering") {
    auto g = gen_madelon({.seed = 3, .n_samples = 100, .n_features = 10, .n_informative = 3});
    SplitSpec spec{.train_fraction = 0.8, .seed = 42, .stratified = true};
    SplitResult a = split(g.data, spec);
    SplitResult b = split(g.data, spec);
    CHECK(a.train_indices == b.train_indices);
    CHECK(a.val_indices == b.val_indices);

    CHECK(a.train_indices.size() + a.val_indices.size() == 100);
    std::set<std::size_t> all(a.train_indices.begin(), a.train_indices.end());
    all.insert(a.val_indices.begin(), a.val_indices.end());
    CHECK(all.size() == 100);

    SplitResult c = split(g.data, {.train_fraction = 0.8, .seed = 43, .stratified = true});
    CHECK(c.train_indices != a.train_indices);
}

TEST_CASE("stratified split keeps class proportions") {
    // 30 zeros, 70 ones.
    Dataset ds;
    ds.x = Matrix(100, 2);
    ds.y.resize(100);
    for (std::size_t i = 0; i < 100; ++i) {
        ds.x(i, 0) = static_cast<double>(i);
        ds.x(i, 1) = 1.0;
        ds.y[i] = i < 30 ? 0.0 : 1.0;
    }
    ds.task = Task::binary();

    SplitResult r = split(ds, {.train_fraction = 0.8, .seed = 7, .stratified = true});
    std::size_t train_zeros = 0;
    for (double v : r.train.y) train_zeros += v == 0.0;
    std::size_t val_zeros = 0;
    for (double v : r.val.y) val_zeros += v == 0.0;
    CHECK(train_zeros == 24);
    CHECK(val_zeros == 6);
    CHECK(r.train.n_samples() == 80);
    CHECK(r.val.n_samples() == 20);
}

TEST_CASE("single-sample class goes to training with a warning") {
    Dataset ds;
    ds.x = Matrix(5, 1, {0, 1, 2, 3, 4});
    ds.y = {0, 0, 0, 0, 1};
    ds.task = Task::binary();
    SplitResult r = split(ds, {.train_fraction = 0.8, .seed = 0, .stratified = true});
    REQUIRE(r.warnings.size() == 1);
    std::size_t train_ones = 0;
    for (double v : r.train.y) train_ones += v == 1.0;
    CHECK(train_ones == 1);
}

TEST_CASE("dataset validation catches broken invariants") {
    Dataset ds;
    ds.x = Matrix(3, 2, {1, 2, 3, 4, 5, 6});
    ds.y = {0, 1, 0};
    ds.task = Task::binary();
    CHECK_NOTHROW(validate(ds));

    Dataset bad = ds;
    bad.y = {0, 1};
    CHECK_THROWS_AS(validate(bad), DataError);

    bad = ds;
    bad.y = {0, 1, 2};
    CHECK_THROWS_AS(validate(bad), DataError);

    bad = ds;
    bad.y = {0, 0, 0}; // class 1 missing
    CHECK_THROWS_AS(validate(bad), DataError);

    bad = ds;
    bad.x(1, 1) = std::nan("");
    CHECK_THROWS_AS(validate(bad), NumericError);
}

TEST_CASE("xor generator matches its truth table and hides the signal linearly") {
    auto g = gen_xor(5, 5000, 10);
    REQUIRE(g.true_features.size() == 2);
    const std::size_t a = g.true_features[0];
    const std::size_t b = g.true_features[1];
    for (std::size_t i = 0; i < g.data.n_samples(); ++i) {
        const bool xa = g.data.x(i, a) != 0.0;
        const bool xb = g.data.x(i, b) != 0.0;
        CHECK(g.data.y[i] == ((xa != xb) ? 1.0 : 0.0));
        CHECK((g.data.x(i, a) == 0.0 || g.data.x(i, a) == 1.0));
    }
    // XOR has no linear trace: even the true features are uncorrelated with y.
    for (std::size_t j = 0; j < g.data.n_features(); ++j) {
        Vector col(g.data.n_samples());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = g.data.x(i, j);
        CHECK(std::abs(pearson(col, g.data.y)) < 0.05);
    }
}

TEST_CASE("madelon generator shapes, balance and noise moments") {
    MadelonParams p{.seed = 9, .n_samples = 4000, .n_features = 20, .n_informative = 5};
    auto g = gen_madelon(p);
    CHECK(g.data.n_samples() == 4000);
    CHECK(g.data.n_features() == 20);
    REQUIRE(g.true_features.size() == 5);

    std::size_t ones = 0;
    for (double v : g.data.y) ones += v == 1.0;
    CHECK(ones == 2000); // equal clusters per class, round-robin assignment

    std::set<std::size_t> info(g.true_features.begin(), g.true_features.end());
    for (std::size_t j = 0; j < 20; ++j) {
        double mean = 0, var = 0;
        for (std::size_t i = 0; i < 4000; ++i) mean += g.data.x(i, j);
        mean /= 4000.0;
        for (std::size_t i = 0; i < 4000; ++i) {
            const double d = g.data.x(i, j) - mean;
            var += d * d;
        }
        var /= 4000.0;
        if (info.count(j)) {
            // Cluster centers at +-2 inflate the variance well above 1.
            CHECK(var > 1.5);
        } else {
            CHECK(std::abs(mean) < 0.2);
            CHECK(var == doctest::Approx(1.0).epsilon(0.2));
        }
    }

    CHECK_THROWS_AS(gen_madelon({.n_samples = 10, .n_features = 5, .n_informative = 2,
                                 .clusters_per_class = 4}),
                    ParamError); // 8 clusters > 4 vertices
}

TEST_CASE("linear regression generator is exactly linear in its true features") {
    LinregParams p{.seed = 17, .n_samples = 300, .n_features = 10, .n_informative = 3};
    auto g = gen_linreg(p);
    REQUIRE(g.true_features.size() == 3);
    REQUIRE(g.coefficients.size() == 3);
    for (double b : g.coefficients) {
        CHECK(b >= 1.0);
        CHECK(b <= 100.0);
    }

    // Noise-free data: OLS on the true columns recovers the coefficients.
    Matrix design(300, 3);
    for (std::size_t i = 0; i < 300; ++i)
        for (std::size_t r = 0; r < 3; ++r) design(i, r) = g.data.x(i, g.true_features[r]);
    Vector beta = oracle::least_squares(design, g.data.y);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(beta[r] == doctest::Approx(g.coefficients[r]).epsilon(1e-9));
}

TEST_CASE("friedman surface evaluates known points") {
    CHECK(friedman1(0, 0, 0, 0, 0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(friedman1(1, 0.5, 0.5, 1, 1) == doctest::Approx(25.0).epsilon(1e-12));

    auto g = gen_friedman(21, 50, 8, 0.0);
    REQUIRE(g.true_features.size() == 5);
    for (std::size_t i = 0; i < 50; ++i) {
        const double expect =
            friedman1(g.data.x(i, g.true_features[0]), g.data.x(i, g.true_features[1]),
                      g.data.x(i, g.true_features[2]), g.data.x(i, g.true_features[3]),
                      g.data.x(i, g.true_features[4]));
        CHECK(g.data.y[i] == doctest::Approx(expect).epsilon(1e-12));
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(g.data.x(i, j) >= 0.0);
            CHECK(g.data.x(i, j) <= 1.0);
        }
    }
}

TEST_CASE("generators are reproducible per seed") {
    auto a = gen_madelon({.seed = 2, .n_samples = 64, .n_features = 12, .n_informative = 3});
    auto b = gen_madelon({.seed = 2, .n_samples = 64, .n_features = 12, .n_informative = 3});
    CHECK(a.data.x.data == b.data.x.data);
    CHECK(a.data.y == b.data.y);
    CHECK(a.true_features == b.true_features);

    auto c = gen_madelon({.seed = 3, .n_samples = 64, .n_features = 12, .n_informative = 3});
    CHECK(a.data.x.data != c.data.x.data);
}

TEST_CASE("csv round-trips datasets exactly") {
    auto g = gen_linreg({.seed = 31, .n_samples = 20, .n_features = 4, .n_informative = 2});
    auto path = temp_csv("roundtrip");
    save_csv(g.data, path.string());

    CsvLoadReport report;
    Dataset loaded = load_csv(path.string(), {}, &report);
    CHECK(loaded.task.kind == TaskKind::Regression);
    CHECK(loaded.n_samples() == 20);
    CHECK(loaded.n_features() == 4);
    CHECK(loaded.feature_names == g.data.feature_names);
    // %.17g output reproduces doubles bit-exactly.
    CHECK(loaded.x.data == g.data.x.data);
    CHECK(loaded.y == g.data.y);
    std::filesystem::remove(path);
}

TEST_CASE("csv task inference and label remapping") {
    auto path = temp_csv("labels");
    write_text(path, "a,b,target\n1,2,3\n2,1,7\n0,0,3\n1,1,7\n");
    CsvLoadReport report;
    Dataset ds = load_csv(path.string(), {}, &report);
    CHECK(ds.task.kind == TaskKind::Binary);
    // Labels {3,7} remapped to {0,1}.
    CHECK(ds.y == Vector{0, 1, 0, 1});
    REQUIRE(report.class_labels.size() == 2);
    CHECK(report.class_labels[0] == 3.0);
    CHECK(report.class_labels[1] == 7.0);
    CHECK_FALSE(report.warnings.empty());

    // Forcing regression keeps the raw values.
    Dataset reg = load_csv(path.string(), {.forced_task = Task::regression()});
    CHECK(reg.task.kind == TaskKind::Regression);
    CHECK(reg.y == Vector{3, 7, 3, 7});

    // Three integer levels infer multiclass.
    write_text(path, "a,target\n1,0\n2,1\n3,2\n4,0\n5,1\n6,2\n");
    Dataset mc = load_csv(path.string());
    CHECK(mc.task.kind == TaskKind::Multiclass);
    CHECK(mc.task.classes == 3);
    std::filesystem::remove(path);
}

TEST_CASE("csv errors name the offending location") {
    auto path = temp_csv("bad");

    write_text(path, "a,b\n1,2\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_csv(path.string())),
                         doctest::Contains("target"), DataError);

    write_text(path, "a,target\n1,2\n3\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_csv(path.string())),
                         doctest::Contains("line 3"), DataError);

    write_text(path, "a,target\n1,2\nx,0\n");
    try {
        static_cast<void>(load_csv(path.string()));
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find('x') != std::string::npos);
    }

    CHECK_THROWS_AS(static_cast<void>(load_csv("/nonexistent/file.csv")), DataError);
    std::filesystem::remove(path);
}

TEST_CASE("dataset row and column selection") {
    auto g = gen_linreg({.seed = 41, .n_samples = 10, .n_features = 5, .n_informative = 2});
    Dataset rows = take_rows(g.data, {1, 3, 5});
    CHECK(rows.n_samples() == 3);
    CHECK(rows.y[1] == g.data.y[3]);
    CHECK(rows.x(2, 4) == g.data.x(5, 4));

    Dataset cols = take_columns(g.data, {4, 0});
    CHECK(cols.n_features() == 2);
    CHECK(cols.feature_names[0] == "f4");
    CHECK(cols.x(3, 1) == g.data.x(3, 0));
}
