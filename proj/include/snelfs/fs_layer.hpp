#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "snelfs/error.hpp"
#include "snelfs/matrix.hpp"

namespace snelfs {

// Feature-selection layer: a bias-free, activation-free dense layer of `dim`
// neurons on top of the m inputs. Activations are A = X*W. Columns of W are
// pushed by the two penalties towards one-hot +-1 vectors, so each neuron
// ends up copying one (standardized) input feature.
struct FsWeights {
    Matrix w; // m x dim

    std::size_t m() const { return w.rows; }
    std::size_t dim() const { return w.cols; }
};

// Every entry 1/(2m): each column's abs-sum starts at 1/2, inside the
// feasible region of the sparsity condition.
FsWeights init_fs_weights(std::size_t m, std::size_t dim);

// A = x*W, no bias, no nonlinearity.
Matrix fs_forward(const FsWeights& fs, const Matrix& x);

// Uncentered variance (1/n)*sum a_i^2; the FS activations are assumed
// zero-mean because the inputs are standardized.
double batch_variance(std::span<const double> a);

// Per-column uncentered variances of an activation matrix.
Vector column_variances(const Matrix& a);

struct PenaltyValues {
    double omega_s = 0.0;
    double omega_a = 0.0;
    Vector per_neuron_s;
    Vector per_neuron_a;
};

// Sparsity penalty: per neuron max(0, sum_j |w_jk| - 1).
double omega_s(const FsWeights& fs, Vector* per_neuron = nullptr);

// Entry (j,k) = sgn(w_jk) where column k's abs-sum exceeds 1, else 0. The
// derivative at the boundary and at w=0 is taken as 0.
Matrix omega_s_grad(const FsWeights& fs);

// Variance penalty: per neuron max(0, 1 - Var(A_k)), variances over the
// given batch.
double omega_a(const FsWeights& fs, const Matrix& x, Vector* per_neuron = nullptr);
double omega_a_from_activations(const Matrix& a, Vector* per_neuron = nullptr);

// Entry (j,k) = -(2/n)*sum_i A_k^i x_j^i where Var(A_k) < 1, else 0.
Matrix omega_a_grad(const FsWeights& fs, const Matrix& x);
Matrix omega_a_grad_from_activations(const Matrix& x, const Matrix& a);

PenaltyValues penalties(const FsWeights& fs, const Matrix& x);

// Sum-weight saliency: S(X_j) = (1/dim) * sum_k |w_jk| / std(A_k), std over
// the full provided data. Neurons with std below 1e-12 are skipped and their
// indices reported via `excluded`.
Vector sum_weight_saliency(const FsWeights& fs, const Matrix& x,
                           std::vector<std::size_t>* excluded = nullptr);

// Max-weight saliency: S(X_j) = max_k |w_jk| / sum_i |w_ik|. All-zero
// columns are skipped and reported via `excluded`.
Vector max_weight_saliency(const FsWeights& fs, std::vector<std::size_t>* excluded = nullptr);

struct SaliencyReport {
    Vector sum_weight;
    Vector max_weight;
    std::vector<std::size_t> ranking_sum; // feature indices, best first, ties by index
    std::vector<std::size_t> ranking_max;
    std::vector<std::size_t> excluded_neurons;
    // Features that dominate more than one neuron; dim neurons may then pick
    // fewer than dim distinct features.
    std::vector<std::size_t> duplicate_selections;
};

SaliencyReport compute_saliency(const FsWeights& fs, const Matrix& x);

// Indices sorted by descending score, ties by ascending index.
std::vector<std::size_t> rank_descending(const Vector& scores);

} // namespace snelfs
