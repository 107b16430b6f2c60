#include "snelfs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace snelfs {

namespace {

constexpr double kVarFloor = 1e-9;

void check_success_inputs(const SuccessInputs& s) {
    if (s.true_features.empty()) throw ParamError("success: true-feature set is empty");
    for (std::size_t j : s.true_features) {
        if (j >= s.m) throw ParamError("success: true-feature index out of range");
    }
    for (std::size_t j : s.selected) {
        if (j >= s.m) throw ParamError("success: selected index out of range");
    }
}

void check_same_length(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size()) throw ShapeError(std::string(what) + ": length mismatch");
    if (a.empty()) throw ParamError(std::string(what) + ": empty input");
}

struct ClassStats {
    std::vector<std::size_t> counts;          // per class
    std::vector<Vector> means;                // per class, per feature
    std::vector<Vector> vars;                 // per class, per feature (population)
};

ClassStats per_class_stats(const Dataset& ds) {
    const std::size_t c = ds.task.class_count();
    const std::size_t m = ds.n_features();
    ClassStats st;
    st.counts.assign(c, 0);
    st.means.assign(c, Vector(m, 0.0));
    st.vars.assign(c, Vector(m, 0.0));
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const auto label = static_cast<std::size_t>(ds.y[i]);
        st.counts[label] += 1;
        const double* xi = ds.x.row(i);
        for (std::size_t j = 0; j < m; ++j) st.means[label][j] += xi[j];
    }
    for (std::size_t ci = 0; ci < c; ++ci) {
        for (double& v : st.means[ci]) v /= static_cast<double>(st.counts[ci]);
    }
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const auto label = static_cast<std::size_t>(ds.y[i]);
        const double* xi = ds.x.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double d = xi[j] - st.means[label][j];
            st.vars[label][j] += d * d;
        }
    }
    for (std::size_t ci = 0; ci < c; ++ci) {
        for (double& v : st.vars[ci]) v /= static_cast<double>(st.counts[ci]);
    }
    return st;
}

} // namespace

double index_of_success(const SuccessInputs& s, bool ranked_all_true_first) {
    check_success_inputs(s);
    if (ranked_all_true_first) return 1.0;
    const std::set<std::size_t> truth(s.true_features.begin(), s.true_features.end());
    const std::set<std::size_t> chosen(s.selected.begin(), s.selected.end());
    std::size_t r_s = 0;
    for (std::size_t j : chosen) r_s += truth.count(j);
    const std::size_t i_s = chosen.size() - r_s;
    const double r_t = static_cast<double>(truth.size());
    const double i_t = static_cast<double>(s.m - truth.size());
    const double alpha = i_t == 0.0 ? 0.5 : std::min(0.5, r_t / i_t);
    const double irrelevant_term = i_t == 0.0 ? 0.0 : static_cast<double>(i_s) / i_t;
    return static_cast<double>(r_s) / r_t - alpha * irrelevant_term;
}

double success_from_ranking(const std::vector<std::size_t>& ranking, std::size_t top_k,
                            const std::vector<std::size_t>& true_features, std::size_t m) {
    if (top_k > ranking.size()) throw ParamError("success: top_k exceeds ranking length");
    SuccessInputs s;
    s.selected.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(top_k));
    s.true_features = true_features;
    s.m = m;
    bool all_true_first = top_k >= true_features.size() && !true_features.empty();
    if (all_true_first) {
        const std::set<std::size_t> truth(true_features.begin(), true_features.end());
        for (std::size_t r = 0; r < truth.size(); ++r) {
            if (truth.count(ranking[r]) == 0) {
                all_true_first = false;
                break;
            }
        }
    }
    return index_of_success(s, all_true_first);
}

double accuracy(const Vector& y_true, const Vector& y_pred) {
    check_same_length(y_true, y_pred, "accuracy");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

double mean_squared_error(const Vector& y_true, const Vector& y_pred) {
    check_same_length(y_true, y_pred, "mse");
    double total = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double d = y_true[i] - y_pred[i];
        total += d * d;
    }
    return total / static_cast<double>(y_true.size());
}

double f1_weighted(const Vector& y_true, const Vector& y_pred, const Task& task) {
    check_same_length(y_true, y_pred, "f1");
    if (!task.is_classification()) throw ParamError("f1: classification tasks only");
    const std::size_t c = task.class_count();
    std::vector<std::size_t> tp(c, 0), fp(c, 0), fn(c, 0), support(c, 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const auto t = static_cast<std::size_t>(y_true[i]);
        const auto p = static_cast<std::size_t>(y_pred[i]);
        if (t >= c || p >= c) throw DataError("f1: label outside 0.." + std::to_string(c - 1));
        support[t] += 1;
        if (t == p) {
            tp[t] += 1;
        } else {
            fn[t] += 1;
            fp[p] += 1;
        }
    }
    const auto class_f1 = [&](std::size_t ci) {
        const double denom = static_cast<double>(2 * tp[ci] + fp[ci] + fn[ci]);
        return denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp[ci]) / denom;
    };
    if (task.kind == TaskKind::Binary) return class_f1(1);
    double total = 0.0;
    for (std::size_t ci = 0; ci < c; ++ci) total += static_cast<double>(support[ci]) * class_f1(ci);
    return total / static_cast<double>(y_true.size());
}

Vector fisher_score(const Dataset& ds) {
    if (!ds.task.is_classification()) throw ParamError("fisher_score: classification tasks only");
    const std::size_t m = ds.n_features();
    const ClassStats st = per_class_stats(ds);

    Vector overall_mean(m, 0.0);
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const double* xi = ds.x.row(i);
        for (std::size_t j = 0; j < m; ++j) overall_mean[j] += xi[j];
    }
    for (double& v : overall_mean) v /= static_cast<double>(ds.n_samples());

    Vector scores(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double between = 0.0;
        double within = 0.0;
        for (std::size_t ci = 0; ci < st.counts.size(); ++ci) {
            const double nc = static_cast<double>(st.counts[ci]);
            const double dm = st.means[ci][j] - overall_mean[j];
            between += nc * dm * dm;
            within += nc * st.vars[ci][j];
        }
        scores[j] = between / std::max(within, kVarFloor);
    }
    return scores;
}

Vector knn_predict(const Dataset& train, const Matrix& test_x, std::size_t k) {
    if (!train.task.is_classification()) throw ParamError("knn: classification tasks only");
    if (k == 0 || k > train.n_samples()) {
        throw ParamError("knn: k=" + std::to_string(k) + " with " +
                         std::to_string(train.n_samples()) + " training samples");
    }
    if (test_x.cols != train.n_features()) throw ShapeError("knn: feature count mismatch");

    const std::size_t n = train.n_samples();
    const std::size_t classes = train.task.class_count();
    Vector out(test_x.rows, 0.0);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t t = 0; t < test_x.rows; ++t) {
        const double* q = test_x.row(t);
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = train.x.row(i);
            double d2 = 0.0;
            for (std::size_t j = 0; j < test_x.cols; ++j) {
                const double d = q[j] - xi[j];
                d2 += d * d;
            }
            dist[i] = {d2, i};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        std::vector<std::size_t> votes(classes, 0);
        for (std::size_t r = 0; r < k; ++r) {
            votes[static_cast<std::size_t>(train.y[dist[r].second])] += 1;
        }
        std::size_t best = 0;
        for (std::size_t ci = 1; ci < classes; ++ci) {
            if (votes[ci] > votes[best]) best = ci;
        }
        out[t] = static_cast<double>(best);
    }
    return out;
}

Vector gnb_predict(const Dataset& train, const Matrix& test_x) {
    if (!train.task.is_classification()) throw ParamError("gnb: classification tasks only");
    if (test_x.cols != train.n_features()) throw ShapeError("gnb: feature count mismatch");
    const ClassStats st = per_class_stats(train);
    const std::size_t classes = st.counts.size();
    const std::size_t m = train.n_features();

    std::vector<double> log_prior(classes);
    std::vector<Vector> log_norm(classes, Vector(m));
    for (std::size_t ci = 0; ci < classes; ++ci) {
        log_prior[ci] = std::log(static_cast<double>(st.counts[ci]) /
                                 static_cast<double>(train.n_samples()));
        for (std::size_t j = 0; j < m; ++j) {
            const double var = std::max(st.vars[ci][j], kVarFloor);
            log_norm[ci][j] = -0.5 * std::log(2.0 * std::numbers::pi_v<double> * var);
        }
    }

    Vector out(test_x.rows, 0.0);
    for (std::size_t t = 0; t < test_x.rows; ++t) {
        const double* q = test_x.row(t);
        std::size_t best = 0;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (std::size_t ci = 0; ci < classes; ++ci) {
            double ll = log_prior[ci];
            for (std::size_t j = 0; j < m; ++j) {
                const double var = std::max(st.vars[ci][j], kVarFloor);
                const double d = q[j] - st.means[ci][j];
                ll += log_norm[ci][j] - d * d / (2.0 * var);
            }
            if (ll > best_ll) {
                best_ll = ll;
                best = ci;
            }
        }
        out[t] = static_cast<double>(best);
    }
    return out;
}

std::vector<std::vector<std::size_t>> make_folds(const Dataset& ds, const CvSpec& spec) {
    if (spec.k < 2) throw ParamError("cv: fold count must be >= 2");
    if (spec.k > ds.n_samples()) throw ParamError("cv: more folds than samples");
    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<std::size_t>> folds(spec.k);

    const auto deal = [&](std::vector<std::size_t>& indices, std::size_t& next_fold) {
        std::shuffle(indices.begin(), indices.end(), rng);
        for (std::size_t idx : indices) {
            folds[next_fold].push_back(idx);
            next_fold = (next_fold + 1) % spec.k;
        }
    };

    if (spec.stratified && ds.task.is_classification()) {
        std::size_t next_fold = 0;
        for (std::size_t ci = 0; ci < ds.task.class_count(); ++ci) {
            std::vector<std::size_t> indices;
            for (std::size_t i = 0; i < ds.n_samples(); ++i) {
                if (static_cast<std::size_t>(ds.y[i]) == ci) indices.push_back(i);
            }
            if (indices.size() < spec.k) {
                throw DataError("cv: class " + std::to_string(ci) + " has " +
                                std::to_string(indices.size()) + " samples, fewer than " +
                                std::to_string(spec.k) + " folds");
            }
            deal(indices, next_fold);
        }
    } else {
        std::vector<std::size_t> indices(ds.n_samples());
        std::iota(indices.begin(), indices.end(), std::size_t{0});
        std::size_t next_fold = 0;
        deal(indices, next_fold);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

CvResult cv_f1(const Dataset& ds, const FsMethod& fs_method, std::size_t n_select,
               Classifier classifier, const CvSpec& spec) {
    if (!ds.task.is_classification()) throw ParamError("cv: classification tasks only");
    if (n_select == 0 || n_select > ds.n_features()) {
        throw ParamError("cv: n_select must be in 1.." + std::to_string(ds.n_features()));
    }
    const auto folds = make_folds(ds, spec);
    const std::size_t n = ds.n_samples();

    CvResult result;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<char> in_test(n, 0);
        for (std::size_t idx : folds[f]) in_test[idx] = 1;
        std::vector<std::size_t> train_idx;
        train_idx.reserve(n - folds[f].size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_test[i]) train_idx.push_back(i);
        }

        Dataset fold_train;
        fold_train.x = take_rows(ds.x, train_idx);
        fold_train.task = ds.task;
        fold_train.feature_names = ds.feature_names;
        for (std::size_t idx : train_idx) fold_train.y.push_back(ds.y[idx]);
        Matrix test_x = take_rows(ds.x, folds[f]);
        Vector test_y;
        for (std::size_t idx : folds[f]) test_y.push_back(ds.y[idx]);

        for (std::size_t ci = 0; ci < ds.task.class_count(); ++ci) {
            if (std::none_of(fold_train.y.begin(), fold_train.y.end(),
                             [&](double v) { return static_cast<std::size_t>(v) == ci; })) {
                throw DataError("cv: fold " + std::to_string(f) + " training part misses class " +
                                std::to_string(ci));
            }
        }

        const Standardizer std_fit = standardize_fit(fold_train.x);
        fold_train.x = standardize_apply(std_fit, fold_train.x);
        test_x = standardize_apply(std_fit, test_x);

        std::vector<std::size_t> ranking = fs_method(fold_train);
        if (ranking.size() < n_select) throw ParamError("cv: ranking shorter than n_select");
        std::vector<std::size_t> selected(ranking.begin(),
                                          ranking.begin() + static_cast<std::ptrdiff_t>(n_select));

        Dataset reduced_train = fold_train;
        reduced_train.x = take_columns(fold_train.x, selected);
        reduced_train.feature_names.clear();
        if (!ds.feature_names.empty()) {
            for (std::size_t j : selected) {
                reduced_train.feature_names.push_back(ds.feature_names[j]);
            }
        }
        const Matrix reduced_test = take_columns(test_x, selected);

        const Vector pred = classifier == Classifier::Knn
                                ? knn_predict(reduced_train, reduced_test, 5)
                                : gnb_predict(reduced_train, reduced_test);
        result.fold_scores.push_back(f1_weighted(test_y, pred, ds.task));
        result.fold_selected.push_back(std::move(selected));
    }

    const double k = static_cast<double>(result.fold_scores.size());
    result.mean = std::accumulate(result.fold_scores.begin(), result.fold_scores.end(), 0.0) / k;
    double ss = 0.0;
    for (double s : result.fold_scores) ss += (s - result.mean) * (s - result.mean);
    result.stddev = std::sqrt(ss / k);
    return result;
}

} // namespace snelfs
