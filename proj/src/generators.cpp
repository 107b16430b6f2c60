#include "snelfs/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace snelfs {

namespace {

std::vector<std::size_t> random_positions(std::size_t m, std::size_t count, std::mt19937_64& rng) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(count);
    return order;
}

} // namespace

GeneratedDataset gen_madelon(const MadelonParams& p) {
    if (p.n_informative == 0 || p.n_informative > p.n_features) {
        throw ParamError("gen_madelon: need 1 <= n_informative <= n_features");
    }
    if (p.clusters_per_class == 0) throw ParamError("gen_madelon: clusters_per_class must be >= 1");
    const std::size_t n_clusters = 2 * p.clusters_per_class;
    if (p.n_informative >= 64 ? false : (n_clusters > (std::size_t{1} << p.n_informative))) {
        throw ParamError("gen_madelon: 2*clusters_per_class exceeds the number of hypercube vertices");
    }
    if (p.n_samples < n_clusters) {
        throw ParamError("gen_madelon: need at least one sample per cluster");
    }

    std::mt19937_64 rng(p.seed);

    // Distinct hypercube vertices, coordinates +-vertex_scale.
    std::vector<std::uint64_t> codes;
    if (p.n_informative < 21) {
        codes.resize(std::size_t{1} << p.n_informative);
        std::iota(codes.begin(), codes.end(), 0);
        std::shuffle(codes.begin(), codes.end(), rng);
        codes.resize(n_clusters);
    } else {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (p.n_informative >= 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << p.n_informative) - 1));
        while (codes.size() < n_clusters) {
            const std::uint64_t c = dist(rng);
            if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.push_back(c);
        }
    }

    const std::size_t n = p.n_samples;
    const std::size_t m = p.n_features;
    Matrix info(n, p.n_informative);
    Vector y(n, 0.0);
    std::normal_distribution<double> cluster_noise(0.0, p.cluster_std);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cluster = i % n_clusters;
        y[i] = cluster < p.clusters_per_class ? 0.0 : 1.0;
        for (std::size_t d = 0; d < p.n_informative; ++d) {
            const double vertex = (codes[cluster] >> d) & 1 ? p.vertex_scale : -p.vertex_scale;
            info(i, d) = vertex + cluster_noise(rng);
        }
    }

    Matrix x(n, m);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m - p.n_informative; ++j) x(i, j) = unit_normal(rng);
    }

    // Scatter informative dimensions into random feature positions. The noise
    // block above filled columns 0..m-n_inf-1; shift it out of the chosen slots.
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> info_pos(perm.begin(), perm.begin() + p.n_informative);

    Matrix full(n, m);
    std::vector<bool> is_info(m, false);
    for (std::size_t d = 0; d < p.n_informative; ++d) is_info[info_pos[d]] = true;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t src = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (!is_info[j]) full(i, j) = x(i, src++);
        }
        for (std::size_t d = 0; d < p.n_informative; ++d) full(i, info_pos[d]) = info(i, d);
    }

    // Decouple row order from the cluster assignment pattern.
    std::vector<std::size_t> row_order(n);
    std::iota(row_order.begin(), row_order.end(), 0);
    std::shuffle(row_order.begin(), row_order.end(), rng);

    GeneratedDataset out;
    out.data.x = Matrix(n, m);
    out.data.y.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(full.row(row_order[r]), full.row(row_order[r]) + m, out.data.x.row(r));
        out.data.y[r] = y[row_order[r]];
    }
    out.data.task = Task::binary();
    out.data.feature_names = default_feature_names(m);
    std::sort(info_pos.begin(), info_pos.end());
    out.true_features = std::move(info_pos);
    validate(out.data);
    return out;
}

GeneratedDataset gen_xor(std::uint64_t seed, std::size_t n_samples, std::size_t n_features) {
    if (n_features < 2) throw ParamError("gen_xor: need at least 2 features");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);

    Matrix x(n_samples, n_features);
    for (double& v : x.data) v = coin(rng) ? 1.0 : 0.0;

    auto pos = random_positions(n_features, 2, rng);
    GeneratedDataset out;
    out.data.x = std::move(x);
    out.data.y.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const bool a = out.data.x(i, pos[0]) != 0.0;
        const bool b = out.data.x(i, pos[1]) != 0.0;
        out.data.y[i] = (a != b) ? 1.0 : 0.0;
    }
    out.data.task = Task::binary();
    out.data.feature_names = default_feature_names(n_features);
    std::sort(pos.begin(), pos.end());
    out.true_features = std::move(pos);
    validate(out.data);
    return out;
}

GeneratedDataset gen_linreg(const LinregParams& p) {
    if (p.n_informative == 0 || p.n_informative > p.n_features) {
        throw ParamError("gen_linreg: need 1 <= n_informative <= n_features");
    }
    if (p.noise_std < 0.0) throw ParamError("gen_linreg: noise_std must be >= 0");
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    Matrix x(p.n_samples, p.n_features);
    for (double& v : x.data) v = unit_normal(rng);

    auto pos = random_positions(p.n_features, p.n_informative, rng);
    std::uniform_real_distribution<double> coef_dist(1.0, 100.0);
    Vector beta(p.n_informative);
    for (double& b : beta) b = coef_dist(rng);

    GeneratedDataset out;
    out.data.y.resize(p.n_samples, 0.0);
    for (std::size_t i = 0; i < p.n_samples; ++i) {
        double v = 0.0;
        for (std::size_t r = 0; r < p.n_informative; ++r) v += beta[r] * x(i, pos[r]);
        out.data.y[i] = v;
    }
    if (p.noise_std > 0.0) {
        for (std::size_t i = 0; i < p.n_samples; ++i) out.data.y[i] += p.noise_std * unit_normal(rng);
    }
    out.data.x = std::move(x);
    out.data.task = Task::regression();
    out.data.feature_names = default_feature_names(p.n_features);
    out.true_features = std::move(pos);
    out.coefficients = std::move(beta);
    validate(out.data);
    return out;
}

double friedman1(double x1, double x2, double x3, double x4, double x5) {
    constexpr double pi = 3.14159265358979323846;
    return 10.0 * std::sin(pi * x1 * x2) + 20.0 * (x3 - 0.5) * (x3 - 0.5) + 10.0 * x4 + 5.0 * x5;
}

GeneratedDataset gen_friedman(std::uint64_t seed, std::size_t n_samples, std::size_t n_features,
                              double noise_std) {
    if (n_features < 5) throw ParamError("gen_friedman: need at least 5 features");
    if (noise_std < 0.0) throw ParamError("gen_friedman: noise_std must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Matrix x(n_samples, n_features);
    for (double& v : x.data) v = unit(rng);

    auto pos = random_positions(n_features, 5, rng);
    GeneratedDataset out;
    out.data.y.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        out.data.y[i] =
            friedman1(x(i, pos[0]), x(i, pos[1]), x(i, pos[2]), x(i, pos[3]), x(i, pos[4]));
    }
    if (noise_std > 0.0) {
        std::normal_distribution<double> unit_normal(0.0, 1.0);
        for (std::size_t i = 0; i < n_samples; ++i) out.data.y[i] += noise_std * unit_normal(rng);
    }
    out.data.x = std::move(x);
    out.data.task = Task::regression();
    out.data.feature_names = default_feature_names(n_features);
    out.true_features = std::move(pos);
    validate(out.data);
    return out;
}

} // namespace snelfs
