#include "snelfs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace snelfs {

std::string task_name(const Task& task) {
    switch (task.kind) {
        case TaskKind::Binary: return "binary";
        case TaskKind::Multiclass: return "multiclass";
        case TaskKind::Regression: return "regression";
    }
    return "unknown";
}

Task task_from_name(const std::string& name, std::size_t classes) {
    if (name == "binary") return Task::binary();
    if (name == "multiclass") {
        if (classes < 2) throw ParamError("multiclass task needs a class count >= 2");
        return Task::multiclass(classes);
    }
    if (name == "regression") return Task::regression();
    throw ParamError("unknown task kind: " + name);
}

void validate(const Dataset& ds) {
    if (ds.x.rows != ds.y.size()) {
        throw DataError("dataset: x has " + std::to_string(ds.x.rows) + " rows but y has " +
                        std::to_string(ds.y.size()) + " entries");
    }
    if (ds.n_samples() < 2) throw DataError("dataset: need at least 2 samples");
    if (!ds.feature_names.empty() && ds.feature_names.size() != ds.n_features()) {
        throw DataError("dataset: feature name count does not match feature count");
    }
    require_finite(ds.x, "dataset features");
    require_finite(ds.y, "dataset targets");
    if (ds.task.is_classification()) {
        const std::size_t k = ds.task.class_count();
        std::vector<bool> seen(k, false);
        for (double v : ds.y) {
            const double r = std::round(v);
            if (r != v || r < 0 || static_cast<std::size_t>(r) >= k) {
                throw DataError("dataset: label " + std::to_string(v) + " outside 0.." +
                                std::to_string(k - 1));
            }
            seen[static_cast<std::size_t>(r)] = true;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (!seen[c]) throw DataError("dataset: class " + std::to_string(c) + " has no samples");
        }
    }
}

std::vector<std::string> default_feature_names(std::size_t m) {
    std::vector<std::string> names(m);
    for (std::size_t j = 0; j < m; ++j) names[j] = "f" + std::to_string(j);
    return names;
}

Standardizer standardize_fit(const Matrix& x) {
    if (x.rows == 0) throw DataError("standardize_fit: empty matrix");
    const double n = static_cast<double>(x.rows);
    Standardizer s;
    s.means.assign(x.cols, 0.0);
    s.stds.assign(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* xi = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) s.means[j] += xi[j];
    }
    for (std::size_t j = 0; j < x.cols; ++j) s.means[j] /= n;
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* xi = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) {
            const double d = xi[j] - s.means[j];
            s.stds[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < x.cols; ++j) {
        s.stds[j] = std::sqrt(s.stds[j] / n); // population convention
        if (s.stds[j] <= 0.0) {
            s.stds[j] = 1.0;
            s.constant_features.push_back(j);
        }
    }
    return s;
}

Matrix standardize_apply(const Standardizer& std_, const Matrix& x) {
    if (x.cols != std_.means.size()) {
        throw ShapeError("standardize_apply: expected " + std::to_string(std_.means.size()) +
                         " columns, got " + std::to_string(x.cols));
    }
    Matrix out = x;
    for (std::size_t i = 0; i < out.rows; ++i) {
        double* oi = out.row(i);
        for (std::size_t j = 0; j < out.cols; ++j) oi[j] = (oi[j] - std_.means[j]) / std_.stds[j];
    }
    return out;
}

Matrix standardize_invert(const Standardizer& std_, const Matrix& x) {
    if (x.cols != std_.means.size()) {
        throw ShapeError("standardize_invert: expected " + std::to_string(std_.means.size()) +
                         " columns, got " + std::to_string(x.cols));
    }
    Matrix out = x;
    for (std::size_t i = 0; i < out.rows; ++i) {
        double* oi = out.row(i);
        for (std::size_t j = 0; j < out.cols; ++j) oi[j] = oi[j] * std_.stds[j] + std_.means[j];
    }
    return out;
}

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.task = ds.task;
    out.feature_names = ds.feature_names;
    out.x = Matrix(indices.size(), ds.n_features());
    out.y.resize(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const std::size_t i = indices[r];
        if (i >= ds.n_samples()) throw ParamError("take_rows: index out of range");
        std::copy(ds.x.row(i), ds.x.row(i) + ds.n_features(), out.x.row(r));
        out.y[r] = ds.y[i];
    }
    return out;
}

Dataset take_columns(const Dataset& ds, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.task = ds.task;
    out.y = ds.y;
    out.x = Matrix(ds.n_samples(), indices.size());
    out.feature_names.reserve(indices.size());
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= ds.n_features()) throw ParamError("take_columns: index out of range");
        if (!ds.feature_names.empty()) out.feature_names.push_back(ds.feature_names[indices[c]]);
    }
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const double* xi = ds.x.row(i);
        double* oi = out.x.row(i);
        for (std::size_t c = 0; c < indices.size(); ++c) oi[c] = xi[indices[c]];
    }
    return out;
}

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
    if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0) {
        throw ParamError("split: train_fraction must lie in (0,1)");
    }
    const std::size_t n = ds.n_samples();
    SplitResult result;
    std::mt19937_64 rng(spec.seed);

    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> val_idx;

    if (spec.stratified && ds.task.is_classification()) {
        const std::size_t k = ds.task.class_count();
        std::vector<std::vector<std::size_t>> by_class(k);
        for (std::size_t i = 0; i < n; ++i) {
            by_class[static_cast<std::size_t>(ds.y[i])].push_back(i);
        }
        for (std::size_t c = 0; c < k; ++c) {
            auto& members = by_class[c];
            std::shuffle(members.begin(), members.end(), rng);
            if (members.size() == 1) {
                train_idx.push_back(members[0]);
                result.warnings.push_back("class " + std::to_string(c) +
                                          " has a single sample; assigned to training");
                continue;
            }
            auto n_train = static_cast<std::size_t>(
                std::llround(spec.train_fraction * static_cast<double>(members.size())));
            n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
            train_idx.insert(train_idx.end(), members.begin(), members.begin() + n_train);
            val_idx.insert(val_idx.end(), members.begin() + n_train, members.end());
        }
    } else {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto n_train = static_cast<std::size_t>(
            std::llround(spec.train_fraction * static_cast<double>(n)));
        n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
        train_idx.assign(order.begin(), order.begin() + n_train);
        val_idx.assign(order.begin() + n_train, order.end());
    }

    if (val_idx.empty()) throw DataError("split: validation part is empty");
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(val_idx.begin(), val_idx.end());

    result.train = take_rows(ds, train_idx);
    result.val = take_rows(ds, val_idx);
    result.train_indices = std::move(train_idx);
    result.val_indices = std::move(val_idx);
    return result;
}

} // namespace snelfs
