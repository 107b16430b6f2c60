#include "snelfs/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <utility>

#include "snelfs/eval.hpp"

namespace snelfs {

std::string metric_name(Metric metric) {
    switch (metric) {
    case Metric::Accuracy: return "accuracy";
    case Metric::F1: return "f1";
    case Metric::NegMse: return "neg_mse";
    }
    throw ParamError("train: unknown metric");
}

Metric metric_from_name(const std::string& name) {
    if (name == "accuracy") return Metric::Accuracy;
    if (name == "f1") return Metric::F1;
    if (name == "neg_mse") return Metric::NegMse;
    throw ParamError("train: unknown metric '" + name + "'");
}

namespace {

double metric_value(const Matrix& output, const Vector& y, Metric metric, const Task& task) {
    switch (metric) {
    case Metric::Accuracy: return accuracy(y, predict_labels(output, task));
    case Metric::F1: return f1_weighted(y, predict_labels(output, task), task);
    case Metric::NegMse: return -mean_squared_error(y, predict_labels(output, task));
    }
    throw ParamError("train: unknown metric");
}

// Gradients given precomputed FS activations `a` and a forward cache over
// them; avoids running the big X*W product twice per step.
FullGradients gradients_from_forward(const FsWeights& fs, const MlpParams& mlp,
                                     const Architecture& arch, const Matrix& x, const Matrix& a,
                                     const ForwardCache& cache, const Vector& y, double lambda_s,
                                     double lambda_a) {
    FullGradients out;
    out.mlp = mlp_backward(mlp, arch, cache, y);

    Matrix g = std::move(out.mlp.d_input); // n x dim, d(loss)/dA
    if (lambda_a != 0.0) {
        const Vector vars = column_variances(a);
        const double c = -2.0 * lambda_a / static_cast<double>(a.rows);
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (vars[k] >= 1.0) continue;
            for (std::size_t i = 0; i < a.rows; ++i) g(i, k) += c * a(i, k);
        }
    }
    out.fs = matmul_at(x, g);
    if (lambda_s != 0.0) {
        const Matrix sg = omega_s_grad(fs);
        for (std::size_t idx = 0; idx < out.fs.data.size(); ++idx) {
            out.fs.data[idx] += lambda_s * sg.data[idx];
        }
    }
    return out;
}

// Regression targets train in standardized units (fit on the training split)
// so the data loss and the FS penalties share one scale; classification keeps
// the identity scale.
struct TargetScale {
    double mean = 0.0;
    double std = 1.0;

    Vector apply(const Vector& y) const {
        Vector out = y;
        for (double& v : out) v = (v - mean) / std;
        return out;
    }
};

struct ValStats {
    double metric = 0.0;
    double objective = 0.0;
    double avg_s = 0.0;
    double avg_a = 0.0;
};

// `y` is in training (scaled) units, `y_data` in original units; the
// objective uses the former, the metric the latter.
ValStats evaluate_split(const FsWeights& fs, const MlpParams& mlp, const Architecture& arch,
                        const Matrix& x, const Vector& y, const Vector& y_data,
                        const TargetScale& scale, double lambda_s, double lambda_a,
                        Metric metric) {
    const Matrix a = fs_forward(fs, x);
    const Matrix out = mlp_forward(mlp, arch, a);
    ValStats stats;
    if (arch.task.is_classification()) {
        stats.metric = metric_value(out, y_data, metric, arch.task);
    } else {
        Matrix rescaled = out;
        for (double& v : rescaled.data) v = v * scale.std + scale.mean;
        stats.metric = metric_value(rescaled, y_data, metric, arch.task);
    }
    const double os = omega_s(fs);
    const double oa = omega_a_from_activations(a);
    const double dim = static_cast<double>(fs.dim());
    stats.avg_s = os / dim;
    stats.avg_a = oa / dim;
    stats.objective = data_loss(out, y, arch.task) + weight_penalty(mlp, arch.l1, arch.l2) +
                      lambda_s * os + lambda_a * oa;
    return stats;
}

bool better_checkpoint(double metric, double objective, const Checkpoint& incumbent) {
    if (metric != incumbent.val_metric) return metric > incumbent.val_metric;
    return objective < incumbent.val_objective;
}

} // namespace

double objective(const FsWeights& fs, const MlpParams& mlp, const Architecture& arch,
                 const Matrix& x, const Vector& y, double lambda_s, double lambda_a,
                 ObjectiveComponents* components) {
    const Matrix a = fs_forward(fs, x);
    const Matrix out = mlp_forward(mlp, arch, a);
    ObjectiveComponents c;
    c.loss = data_loss(out, y, arch.task);
    c.reg = weight_penalty(mlp, arch.l1, arch.l2);
    c.omega_s = omega_s(fs);
    c.omega_a = omega_a_from_activations(a);
    if (components) *components = c;
    return c.loss + c.reg + lambda_s * c.omega_s + lambda_a * c.omega_a;
}

FullGradients objective_grad(const FsWeights& fs, const MlpParams& mlp, const Architecture& arch,
                             const Matrix& x, const Vector& y, double lambda_s, double lambda_a) {
    const Matrix a = fs_forward(fs, x);
    ForwardCache cache;
    mlp_forward(mlp, arch, a, &cache);
    return gradients_from_forward(fs, mlp, arch, x, a, cache, y, lambda_s, lambda_a);
}

TrainReport train(const Dataset& ds, const TrainConfig& cfg) {
    validate(ds);
    if (cfg.dim == 0) throw ParamError("train: dim must be >= 1");
    if (!(cfg.lr > 0.0)) throw ParamError("train: lr must be positive");
    if (cfg.penalty_limit < 0.0) throw ParamError("train: penalty_limit must be non-negative");
    if (ds.task.is_classification() && cfg.metric == Metric::NegMse) {
        throw ParamError("train: neg_mse metric needs a regression task");
    }
    if (!ds.task.is_classification() && cfg.metric != Metric::NegMse) {
        throw ParamError("train: classification metrics need a classification task");
    }
    if (cfg.architecture.input_dim != 0 && cfg.architecture.input_dim != cfg.dim) {
        throw ParamError("train: architecture input_dim conflicts with dim");
    }

    Architecture arch = cfg.architecture;
    arch.input_dim = cfg.dim;
    arch.task = ds.task;
    arch.validate();

    std::mt19937_64 master(cfg.seed);
    const std::uint64_t split_seed = master();
    const std::uint64_t init_seed = master();
    const std::uint64_t batch_seed = master();

    SplitSpec split_spec;
    split_spec.train_fraction = 0.8;
    split_spec.seed = split_seed;
    split_spec.stratified = ds.task.is_classification();
    SplitResult parts = split(ds, split_spec);

    TrainReport report;
    report.warnings = parts.warnings;
    report.feature_names =
        ds.feature_names.empty() ? default_feature_names(ds.n_features()) : ds.feature_names;
    report.n_features = ds.n_features();
    report.task = ds.task;

    report.standardizer = standardize_fit(parts.train.x);
    const Matrix train_x = standardize_apply(report.standardizer, parts.train.x);
    const Matrix val_x = standardize_apply(report.standardizer, parts.val.x);

    TargetScale y_scale;
    if (!ds.task.is_classification()) {
        const double n = static_cast<double>(parts.train.y.size());
        double mean = 0.0;
        for (double v : parts.train.y) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : parts.train.y) var += (v - mean) * (v - mean);
        const double std = std::sqrt(var / n);
        if (std > 1e-12) y_scale = {mean, std};
    }
    const Vector train_y = y_scale.apply(parts.train.y);
    const Vector val_y = y_scale.apply(parts.val.y);
    const std::size_t n_train = train_x.rows;

    FsWeights fs = init_fs_weights(ds.n_features(), cfg.dim);
    MlpParams mlp = init_params(arch, init_seed);

    std::vector<std::size_t> tensor_sizes{fs.w.data.size()};
    for (const Layer& layer : mlp.layers) {
        tensor_sizes.push_back(layer.w.data.size());
        tensor_sizes.push_back(layer.b.size());
    }
    AdamState adam = AdamState::for_sizes(tensor_sizes, cfg.lr);

    std::size_t batch_size = n_train;
    switch (cfg.batch.mode) {
    case BatchSpec::Mode::Auto: batch_size = n_train <= 512 ? n_train : 128; break;
    case BatchSpec::Mode::Full: batch_size = n_train; break;
    case BatchSpec::Mode::Fixed:
        if (cfg.batch.size == 0) throw ParamError("train: batch size must be >= 1");
        batch_size = std::min(cfg.batch.size, n_train);
        break;
    }
    const bool full_batch = batch_size == n_train;

    const auto stages = stage_sequence(cfg.schedule);
    std::mt19937_64 batch_rng(batch_seed);
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::optional<Checkpoint> best_admissible;
    std::optional<Checkpoint> best_any;
    std::size_t epoch_index = 0;
    report.history.reserve(stages.size() * cfg.schedule.epochs_per_stage);

    for (std::size_t stage_idx = 0; stage_idx < stages.size(); ++stage_idx) {
        const Stage stage = stages[stage_idx];
        for (std::size_t e = 0; e < cfg.schedule.epochs_per_stage; ++e) {
            if (!full_batch) std::shuffle(order.begin(), order.end(), batch_rng);

            double loss_sum = 0.0;
            double omega_a_sum = 0.0;
            std::size_t n_batches = 0;
            for (std::size_t start = 0; start < n_train; start += batch_size) {
                const std::size_t stop = std::min(n_train, start + batch_size);
                Matrix xb_store;
                Vector yb_store;
                const Matrix* xb = &train_x;
                const Vector* yb = &train_y;
                if (!full_batch) {
                    const std::vector<std::size_t> rows(
                        order.begin() + static_cast<std::ptrdiff_t>(start),
                        order.begin() + static_cast<std::ptrdiff_t>(stop));
                    xb_store = take_rows(train_x, rows);
                    yb_store.reserve(rows.size());
                    for (std::size_t idx : rows) yb_store.push_back(train_y[idx]);
                    xb = &xb_store;
                    yb = &yb_store;
                }

                const Matrix a = fs_forward(fs, *xb);
                ForwardCache cache;
                const Matrix out = mlp_forward(mlp, arch, a, &cache);
                loss_sum += data_loss(out, *yb, arch.task);
                omega_a_sum += omega_a_from_activations(a);
                n_batches += 1;

                FullGradients grads = gradients_from_forward(fs, mlp, arch, *xb, a, cache, *yb,
                                                             stage.lambda_s, stage.lambda_a);

                std::vector<std::span<double>> params{{fs.w.data.data(), fs.w.data.size()}};
                std::vector<std::span<const double>> gspans{
                    {grads.fs.data.data(), grads.fs.data.size()}};
                for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
                    params.push_back({mlp.layers[l].w.data.data(), mlp.layers[l].w.data.size()});
                    params.push_back({mlp.layers[l].b.data(), mlp.layers[l].b.size()});
                    gspans.push_back(
                        {grads.mlp.layers[l].w.data.data(), grads.mlp.layers[l].w.data.size()});
                    gspans.push_back({grads.mlp.layers[l].b.data(), grads.mlp.layers[l].b.size()});
                }
                adam_step(adam, params, gspans);
            }

            const ValStats val = evaluate_split(fs, mlp, arch, val_x, val_y, parts.val.y,
                                                y_scale, stage.lambda_s, stage.lambda_a,
                                                cfg.metric);

            EpochRecord rec;
            rec.epoch_index = epoch_index;
            rec.stage_index = stage_idx;
            rec.lambda_s = stage.lambda_s;
            rec.lambda_a = stage.lambda_a;
            rec.train_loss = loss_sum / static_cast<double>(n_batches);
            rec.omega_s = omega_s(fs);
            rec.omega_a = omega_a_sum / static_cast<double>(n_batches);
            rec.val_metric = val.metric;
            report.history.push_back(rec);

            const bool admissible =
                val.avg_s <= cfg.penalty_limit && val.avg_a <= cfg.penalty_limit;
            const bool beats_any = !best_any || better_checkpoint(val.metric, val.objective,
                                                                  *best_any);
            const bool beats_adm =
                admissible &&
                (!best_admissible || better_checkpoint(val.metric, val.objective,
                                                       *best_admissible));
            if (beats_any || beats_adm) {
                Checkpoint cp{fs,          mlp,       val.metric,  val.objective,
                              val.avg_s,   val.avg_a, stage_idx,   epoch_index};
                if (beats_adm) best_admissible = cp;
                if (beats_any) best_any = std::move(cp);
            }
            epoch_index += 1;
        }
    }

    report.epochs_executed = epoch_index;
    if (best_admissible) {
        report.best = std::move(*best_admissible);
    } else {
        report.no_admissible_model = true;
        report.warnings.push_back(
            "no checkpoint satisfied the penalty limit; falling back to the best metric");
        report.best = std::move(*best_any);
    }
    report.saliency = compute_saliency(report.best.fs, train_x);
    return report;
}

std::vector<std::size_t> select_top_k(const SaliencyReport& saliency, std::size_t k,
                                      Measure measure) {
    const auto& ranking =
        measure == Measure::SumWeight ? saliency.ranking_sum : saliency.ranking_max;
    if (k > ranking.size()) {
        throw ParamError("select: k=" + std::to_string(k) + " exceeds feature count " +
                         std::to_string(ranking.size()));
    }
    return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<std::size_t> select_threshold(const SaliencyReport& saliency, double threshold,
                                          Measure measure) {
    const auto& ranking =
        measure == Measure::SumWeight ? saliency.ranking_sum : saliency.ranking_max;
    const auto& scores = measure == Measure::SumWeight ? saliency.sum_weight : saliency.max_weight;
    std::vector<std::size_t> out;
    for (std::size_t j : ranking) {
        if (scores[j] > threshold) {
            out.push_back(j);
        } else {
            break;
        }
    }
    return out;
}

} // namespace snelfs
