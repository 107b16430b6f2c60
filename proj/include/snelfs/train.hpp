#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snelfs/dataset.hpp"
#include "snelfs/fs_layer.hpp"
#include "snelfs/nn.hpp"
#include "snelfs/schedule.hpp"

namespace snelfs {

enum class Metric { Accuracy, F1, NegMse };

std::string metric_name(Metric metric);
Metric metric_from_name(const std::string& name);

// Minibatch sizing: Auto is full-batch up to 512 training samples and 128
// beyond that; Fixed clamps to the training-set size.
struct BatchSpec {
    enum class Mode { Auto, Full, Fixed } mode = Mode::Auto;
    std::size_t size = 128;

    static BatchSpec auto_size() { return {}; }
    static BatchSpec full() { return {Mode::Full, 0}; }
    static BatchSpec fixed(std::size_t n) { return {Mode::Fixed, n}; }
};

struct TrainConfig {
    Architecture architecture; // hidden widths and l1/l2; input_dim and task
                               // are derived from dim and the dataset
    CyclicSchedule schedule;
    std::size_t dim = 15;
    double lr = 1e-3;
    BatchSpec batch;
    std::uint64_t seed = 0;
    Metric metric = Metric::Accuracy;
    double penalty_limit = 0.3;
};

struct Checkpoint {
    FsWeights fs;
    MlpParams mlp;
    double val_metric = 0.0;    // higher is better; regression uses -MSE
    double val_objective = 0.0; // full objective on the validation set
    double avg_penalty_s = 0.0; // omega_s / dim
    double avg_penalty_a = 0.0; // omega_a / dim, on the validation set
    std::size_t stage_index = 0;
    std::size_t epoch_index = 0;
};

struct EpochRecord {
    std::size_t epoch_index = 0;
    std::size_t stage_index = 0;
    double lambda_s = 0.0;
    double lambda_a = 0.0;
    double train_loss = 0.0; // mean data loss over the epoch's minibatches
    double omega_s = 0.0;    // at epoch end
    double omega_a = 0.0;    // mean over the epoch's minibatches
    double val_metric = 0.0;
};

struct TrainReport {
    Checkpoint best;
    std::vector<EpochRecord> history;
    SaliencyReport saliency; // from the best checkpoint on the full training split
    bool no_admissible_model = false;
    std::vector<std::string> warnings;
    Standardizer standardizer;
    std::vector<std::string> feature_names;
    std::size_t n_features = 0;
    Task task;
    std::size_t epochs_executed = 0;
};

struct ObjectiveComponents {
    double loss = 0.0;
    double reg = 0.0;
    double omega_s = 0.0;
    double omega_a = 0.0;
};

// F = loss + l1/l2 weight penalty + lambda_s*omega_s + lambda_a*omega_a,
// with the variance penalty over the given batch.
double objective(const FsWeights& fs, const MlpParams& mlp, const Architecture& arch,
                 const Matrix& x, const Vector& y, double lambda_s, double lambda_a,
                 ObjectiveComponents* components = nullptr);

struct FullGradients {
    Matrix fs; // m x dim
    MlpGradients mlp;
};

// Exact gradient of `objective` w.r.t. the FS weights and every MLP
// parameter. The FS slot is the backprop term X^T * dA plus the two penalty
// gradients.
FullGradients objective_grad(const FsWeights& fs, const MlpParams& mlp, const Architecture& arch,
                             const Matrix& x, const Vector& y, double lambda_s, double lambda_a);

// Full run: 80:20 split (stratified for classification), standardization fit
// on the training part, minibatch Adam over every schedule stage, per-epoch
// validation checkpointing, optimal-model choice among checkpoints whose
// average per-neuron penalties stay within penalty_limit (ties by smaller
// validation objective), and saliency of the chosen model.
TrainReport train(const Dataset& ds, const TrainConfig& cfg);

enum class Measure { SumWeight, MaxWeight };

// k best-scoring features, ties by ascending index.
std::vector<std::size_t> select_top_k(const SaliencyReport& saliency, std::size_t k,
                                      Measure measure);

// All features scoring strictly above the threshold, best first.
std::vector<std::size_t> select_threshold(const SaliencyReport& saliency, double threshold,
                                          Measure measure);

} // namespace snelfs
