#include "snelfs/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace snelfs {

namespace {

constexpr double kProbFloor = 1e-7;

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void apply_relu(Matrix& a) {
    for (double& v : a.data) v = v > 0.0 ? v : 0.0;
}

void apply_sigmoid(Matrix& a) {
    for (double& v : a.data) {
        v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
    }
}

void apply_softmax(Matrix& a) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* row = a.row(i);
        const double mx = *std::max_element(row, row + a.cols);
        double sum = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) {
            row[j] = std::exp(row[j] - mx);
            sum += row[j];
        }
        for (std::size_t j = 0; j < a.cols; ++j) row[j] /= sum;
    }
}

void check_output_shape(const Matrix& output, const Vector& y, const Task& task) {
    if (output.rows != y.size()) {
        throw ShapeError("nn: output has " + std::to_string(output.rows) + " rows but y has " +
                         std::to_string(y.size()));
    }
    const std::size_t want = task.kind == TaskKind::Multiclass ? task.classes : 1;
    if (output.cols != want) {
        throw ShapeError("nn: output width " + std::to_string(output.cols) + ", task expects " +
                         std::to_string(want));
    }
}

} // namespace

void Architecture::validate() const {
    if (input_dim == 0) throw ParamError("nn: input_dim must be >= 1");
    for (std::size_t w : hidden) {
        if (w == 0) throw ParamError("nn: hidden layer width must be >= 1");
    }
    if (l1 < 0.0 || l2 < 0.0) throw ParamError("nn: l1/l2 must be non-negative");
    if (task.kind == TaskKind::Multiclass && task.classes < 3) {
        throw ParamError("nn: multiclass task needs >= 3 classes");
    }
}

MlpParams init_params(const Architecture& arch, std::mt19937_64& rng) {
    arch.validate();
    MlpParams params;
    std::size_t fan_in = arch.input_dim;
    std::vector<std::size_t> widths = arch.hidden;
    widths.push_back(arch.output_dim());
    for (std::size_t fan_out : widths) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        Layer layer{Matrix(fan_in, fan_out), Vector(fan_out, 0.0)};
        for (double& w : layer.w.data) w = dist(rng);
        params.layers.push_back(std::move(layer));
        fan_in = fan_out;
    }
    return params;
}

MlpParams init_params(const Architecture& arch, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return init_params(arch, rng);
}

Matrix mlp_forward(const MlpParams& params, const Architecture& arch, const Matrix& x,
                   ForwardCache* cache) {
    if (x.cols != arch.input_dim) {
        throw ShapeError("nn: input width " + std::to_string(x.cols) + ", architecture expects " +
                         std::to_string(arch.input_dim));
    }
    if (params.layers.size() != arch.layer_count()) {
        throw ShapeError("nn: parameter tree has " + std::to_string(params.layers.size()) +
                         " layers, architecture expects " + std::to_string(arch.layer_count()));
    }
    if (cache) {
        cache->activations.clear();
        cache->activations.push_back(x);
    }
    Matrix a = x;
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const Layer& layer = params.layers[l];
        Matrix z = matmul(a, layer.w);
        for (std::size_t i = 0; i < z.rows; ++i) {
            double* row = z.row(i);
            for (std::size_t j = 0; j < z.cols; ++j) row[j] += layer.b[j];
        }
        if (l + 1 < params.layers.size()) {
            apply_relu(z);
        } else if (arch.task.kind == TaskKind::Binary) {
            apply_sigmoid(z);
        } else if (arch.task.kind == TaskKind::Multiclass) {
            apply_softmax(z);
        }
        a = std::move(z);
        if (cache) cache->activations.push_back(a);
    }
    return a;
}

double data_loss(const Matrix& output, const Vector& y, const Task& task) {
    check_output_shape(output, y, task);
    const double n = static_cast<double>(output.rows);
    double total = 0.0;
    switch (task.kind) {
    case TaskKind::Binary:
        for (std::size_t i = 0; i < output.rows; ++i) {
            const double p = clamp_prob(output(i, 0));
            total -= y[i] > 0.5 ? std::log(p) : std::log(1.0 - p);
        }
        break;
    case TaskKind::Multiclass:
        for (std::size_t i = 0; i < output.rows; ++i) {
            const auto label = static_cast<std::size_t>(y[i]);
            total -= std::log(clamp_prob(output(i, label)));
        }
        break;
    case TaskKind::Regression:
        for (std::size_t i = 0; i < output.rows; ++i) {
            const double d = output(i, 0) - y[i];
            total += d * d;
        }
        break;
    }
    return total / n;
}

double weight_penalty(const MlpParams& params, double l1, double l2) {
    double total = 0.0;
    for (const Layer& layer : params.layers) {
        for (double w : layer.w.data) total += l1 * std::abs(w) + l2 * w * w;
    }
    return total;
}

MlpGradients mlp_backward(const MlpParams& params, const Architecture& arch,
                          const ForwardCache& cache, const Vector& y) {
    if (cache.activations.size() != params.layers.size() + 1) {
        throw ShapeError("nn: cache does not match the parameter tree");
    }
    const Matrix& output = cache.activations.back();
    check_output_shape(output, y, arch.task);
    const double n = static_cast<double>(output.rows);

    // d(loss)/d(pre-activation) of the output layer; the sigmoid/softmax
    // cross-entropy pairs both collapse to (p - y)/n.
    Matrix dz(output.rows, output.cols);
    switch (arch.task.kind) {
    case TaskKind::Binary:
        for (std::size_t i = 0; i < output.rows; ++i) dz(i, 0) = (output(i, 0) - y[i]) / n;
        break;
    case TaskKind::Multiclass:
        for (std::size_t i = 0; i < output.rows; ++i) {
            const auto label = static_cast<std::size_t>(y[i]);
            for (std::size_t j = 0; j < output.cols; ++j) {
                dz(i, j) = (output(i, j) - (j == label ? 1.0 : 0.0)) / n;
            }
        }
        break;
    case TaskKind::Regression:
        for (std::size_t i = 0; i < output.rows; ++i) dz(i, 0) = 2.0 * (output(i, 0) - y[i]) / n;
        break;
    }

    MlpGradients grads;
    grads.layers.resize(params.layers.size());
    for (std::size_t l = params.layers.size(); l-- > 0;) {
        const Matrix& a_prev = cache.activations[l];
        grads.layers[l].w = matmul_at(a_prev, dz);
        grads.layers[l].b = column_sum(dz);
        Matrix da_prev = matmul_bt(dz, params.layers[l].w);
        if (l > 0) {
            // ReLU mask from the post-activation; zero at the kink.
            for (std::size_t idx = 0; idx < da_prev.data.size(); ++idx) {
                if (a_prev.data[idx] <= 0.0) da_prev.data[idx] = 0.0;
            }
            dz = std::move(da_prev);
        } else {
            grads.d_input = std::move(da_prev);
        }
    }

    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const Matrix& w = params.layers[l].w;
        Matrix& dw = grads.layers[l].w;
        for (std::size_t idx = 0; idx < w.data.size(); ++idx) {
            dw.data[idx] += arch.l1 * sgn(w.data[idx]) + 2.0 * arch.l2 * w.data[idx];
        }
    }
    return grads;
}

Vector predict_labels(const Matrix& output, const Task& task) {
    Vector labels(output.rows, 0.0);
    switch (task.kind) {
    case TaskKind::Binary:
        for (std::size_t i = 0; i < output.rows; ++i) labels[i] = output(i, 0) >= 0.5 ? 1.0 : 0.0;
        break;
    case TaskKind::Multiclass:
        for (std::size_t i = 0; i < output.rows; ++i) {
            const double* row = output.row(i);
            std::size_t best = 0;
            for (std::size_t j = 1; j < output.cols; ++j) {
                if (row[j] > row[best]) best = j;
            }
            labels[i] = static_cast<double>(best);
        }
        break;
    case TaskKind::Regression:
        for (std::size_t i = 0; i < output.rows; ++i) labels[i] = output(i, 0);
        break;
    }
    return labels;
}

AdamState AdamState::for_sizes(const std::vector<std::size_t>& sizes, double lr_value) {
    AdamState state;
    state.lr = lr_value;
    state.m.reserve(sizes.size());
    state.v.reserve(sizes.size());
    for (std::size_t s : sizes) {
        state.m.emplace_back(s, 0.0);
        state.v.emplace_back(s, 0.0);
    }
    return state;
}

void adam_step(AdamState& state, const std::vector<std::span<double>>& params,
               const std::vector<std::span<const double>>& grads) {
    if (params.size() != state.m.size() || grads.size() != state.m.size()) {
        throw ShapeError("nn: adam_step tensor count does not match optimizer state");
    }
    state.step += 1;
    const double t = static_cast<double>(state.step);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t s = 0; s < params.size(); ++s) {
        auto p = params[s];
        auto g = grads[s];
        Vector& m = state.m[s];
        Vector& v = state.v[s];
        if (p.size() != m.size() || g.size() != m.size()) {
            throw ShapeError("nn: adam_step tensor size does not match optimizer state");
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
            v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            p[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
        }
    }
}

} // namespace snelfs
