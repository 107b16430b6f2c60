#include "snelfs/fs_layer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace snelfs {

namespace {

constexpr double kStdFloor = 1e-12;

void check_input(const FsWeights& fs, const Matrix& x) {
    if (x.cols != fs.m()) {
        throw ShapeError("fslayer: input has " + std::to_string(x.cols) + " features, weights " +
                         std::to_string(fs.m()));
    }
}

} // namespace

FsWeights init_fs_weights(std::size_t m, std::size_t dim) {
    if (m == 0 || dim == 0) throw ParamError("fslayer: m and dim must be >= 1");
    const double value = 1.0 / (2.0 * static_cast<double>(m));
    return {Matrix(m, dim, value)};
}

Matrix fs_forward(const FsWeights& fs, const Matrix& x) {
    check_input(fs, x);
    return matmul(x, fs.w);
}

double batch_variance(std::span<const double> a) {
    if (a.empty()) throw ParamError("fslayer: variance of an empty batch");
    double total = 0.0;
    for (double v : a) total += v * v;
    return total / static_cast<double>(a.size());
}

Vector column_variances(const Matrix& a) {
    if (a.rows == 0) throw ParamError("fslayer: variance of an empty batch");
    Vector vars(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* row = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) vars[k] += row[k] * row[k];
    }
    const double n = static_cast<double>(a.rows);
    for (double& v : vars) v /= n;
    return vars;
}

double omega_s(const FsWeights& fs, Vector* per_neuron) {
    const Vector sums = column_sum_abs(fs.w);
    if (per_neuron) per_neuron->assign(fs.dim(), 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        const double excess = std::max(0.0, sums[k] - 1.0);
        if (per_neuron) (*per_neuron)[k] = excess;
        total += excess;
    }
    return total;
}

Matrix omega_s_grad(const FsWeights& fs) {
    const Vector sums = column_sum_abs(fs.w);
    Matrix grad(fs.m(), fs.dim());
    for (std::size_t j = 0; j < fs.m(); ++j) {
        const double* wj = fs.w.row(j);
        double* gj = grad.row(j);
        for (std::size_t k = 0; k < fs.dim(); ++k) {
            if (sums[k] > 1.0 && wj[k] != 0.0) gj[k] = wj[k] > 0.0 ? 1.0 : -1.0;
        }
    }
    return grad;
}

double omega_a_from_activations(const Matrix& a, Vector* per_neuron) {
    const Vector vars = column_variances(a);
    if (per_neuron) per_neuron->assign(a.cols, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const double deficit = std::max(0.0, 1.0 - vars[k]);
        if (per_neuron) (*per_neuron)[k] = deficit;
        total += deficit;
    }
    return total;
}

double omega_a(const FsWeights& fs, const Matrix& x, Vector* per_neuron) {
    return omega_a_from_activations(fs_forward(fs, x), per_neuron);
}

Matrix omega_a_grad_from_activations(const Matrix& x, const Matrix& a) {
    if (x.rows != a.rows) throw ShapeError("fslayer: activations do not match the batch");
    const Vector vars = column_variances(a);
    // Zero the columns whose variance already reaches 1, then one transposed
    // product gives -(2/n) * X^T * A over the active columns.
    Matrix masked = a;
    bool any_active = false;
    for (std::size_t k = 0; k < a.cols; ++k) {
        if (vars[k] < 1.0) {
            any_active = true;
        } else {
            for (std::size_t i = 0; i < a.rows; ++i) masked(i, k) = 0.0;
        }
    }
    if (!any_active) return Matrix(x.cols, a.cols);
    Matrix grad = matmul_at(x, masked);
    const double factor = -2.0 / static_cast<double>(a.rows);
    for (double& v : grad.data) v *= factor;
    return grad;
}

Matrix omega_a_grad(const FsWeights& fs, const Matrix& x) {
    return omega_a_grad_from_activations(x, fs_forward(fs, x));
}

PenaltyValues penalties(const FsWeights& fs, const Matrix& x) {
    PenaltyValues out;
    out.omega_s = omega_s(fs, &out.per_neuron_s);
    out.omega_a = omega_a(fs, x, &out.per_neuron_a);
    return out;
}

Vector sum_weight_saliency(const FsWeights& fs, const Matrix& x,
                           std::vector<std::size_t>* excluded) {
    check_input(fs, x);
    const Vector vars = column_variances(fs_forward(fs, x));
    if (excluded) excluded->clear();
    Vector scores(fs.m(), 0.0);
    for (std::size_t k = 0; k < fs.dim(); ++k) {
        const double std_k = std::sqrt(vars[k]);
        if (std_k < kStdFloor) {
            if (excluded) excluded->push_back(k);
            continue;
        }
        for (std::size_t j = 0; j < fs.m(); ++j) scores[j] += std::abs(fs.w(j, k)) / std_k;
    }
    const double inv_dim = 1.0 / static_cast<double>(fs.dim());
    for (double& s : scores) s *= inv_dim;
    return scores;
}

Vector max_weight_saliency(const FsWeights& fs, std::vector<std::size_t>* excluded) {
    const Vector sums = column_sum_abs(fs.w);
    if (excluded) excluded->clear();
    Vector scores(fs.m(), 0.0);
    for (std::size_t k = 0; k < fs.dim(); ++k) {
        if (sums[k] == 0.0) {
            if (excluded) excluded->push_back(k);
            continue;
        }
        for (std::size_t j = 0; j < fs.m(); ++j) {
            scores[j] = std::max(scores[j], std::abs(fs.w(j, k)) / sums[k]);
        }
    }
    return scores;
}

std::vector<std::size_t> rank_descending(const Vector& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

SaliencyReport compute_saliency(const FsWeights& fs, const Matrix& x) {
    SaliencyReport report;
    std::vector<std::size_t> excluded_sum;
    std::vector<std::size_t> excluded_max;
    report.sum_weight = sum_weight_saliency(fs, x, &excluded_sum);
    report.max_weight = max_weight_saliency(fs, &excluded_max);
    report.ranking_sum = rank_descending(report.sum_weight);
    report.ranking_max = rank_descending(report.max_weight);

    report.excluded_neurons = std::move(excluded_sum);
    for (std::size_t k : excluded_max) {
        if (std::find(report.excluded_neurons.begin(), report.excluded_neurons.end(), k) ==
            report.excluded_neurons.end()) {
            report.excluded_neurons.push_back(k);
        }
    }
    std::sort(report.excluded_neurons.begin(), report.excluded_neurons.end());

    // A neuron's pick is its strongest incoming weight; count repeats.
    std::vector<std::size_t> picks(fs.m(), 0);
    for (std::size_t k = 0; k < fs.dim(); ++k) {
        std::size_t best = 0;
        double best_abs = 0.0;
        for (std::size_t j = 0; j < fs.m(); ++j) {
            const double a = std::abs(fs.w(j, k));
            if (a > best_abs) {
                best_abs = a;
                best = j;
            }
        }
        if (best_abs > 0.0) picks[best] += 1;
    }
    for (std::size_t j = 0; j < picks.size(); ++j) {
        if (picks[j] > 1) report.duplicate_selections.push_back(j);
    }
    return report;
}

} // namespace snelfs
