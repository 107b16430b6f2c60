#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "snelfs/dataset.hpp"
#include "snelfs/error.hpp"
#include "snelfs/matrix.hpp"

namespace snelfs {

// Dense feedforward net: `hidden` ReLU layers followed by one output layer
// whose width and activation come from the task (sigmoid for binary, softmax
// for multiclass, identity for regression). l1/l2 regularize weight matrices
// only, never biases.
struct Architecture {
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden;
    Task task = Task::regression();
    double l1 = 0.0;
    double l2 = 0.0;

    std::size_t output_dim() const { return task.kind == TaskKind::Multiclass ? task.classes : 1; }
    std::size_t layer_count() const { return hidden.size() + 1; }
    void validate() const;
};

struct Layer {
    Matrix w;
    Vector b;
};

struct MlpParams {
    std::vector<Layer> layers;
};

struct MlpGradients {
    std::vector<Layer> layers;
    Matrix d_input; // gradient w.r.t. the network input, for chaining upstream
};

// Weights uniform on +-sqrt(6/(fan_in+fan_out)), biases zero.
MlpParams init_params(const Architecture& arch, std::mt19937_64& rng);
MlpParams init_params(const Architecture& arch, std::uint64_t seed);

// Post-activation outputs per layer; activations[0] is the input, back() the
// network output (probabilities or raw values).
struct ForwardCache {
    std::vector<Matrix> activations;
};

Matrix mlp_forward(const MlpParams& params, const Architecture& arch, const Matrix& x,
                   ForwardCache* cache = nullptr);

// Mean loss over samples: binary cross-entropy / categorical cross-entropy /
// MSE by task. Probabilities are clamped to [1e-7, 1-1e-7] inside the logs.
double data_loss(const Matrix& output, const Vector& y, const Task& task);

// l1*sum|w| + l2*sum w^2 over all weight matrices.
double weight_penalty(const MlpParams& params, double l1, double l2);

// Exact gradients of data_loss + weight_penalty w.r.t. every parameter plus
// the input. Subgradient at ReLU and |w| kinks is 0.
MlpGradients mlp_backward(const MlpParams& params, const Architecture& arch,
                          const ForwardCache& cache, const Vector& y);

// Hard predictions from network output: binary p>=0.5 -> 1, multiclass argmax
// (ties to the smallest label), regression passes values through.
Vector predict_labels(const Matrix& output, const Task& task);

// Adam with bias correction. One state owns the moment buffers for every
// parameter tensor of a run; `step` is shared across tensors.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t step = 0;
    std::vector<Vector> m;
    std::vector<Vector> v;

    static AdamState for_sizes(const std::vector<std::size_t>& sizes, double lr);
};

void adam_step(AdamState& state, const std::vector<std::span<double>>& params,
               const std::vector<std::span<const double>>& grads);

} // namespace snelfs
