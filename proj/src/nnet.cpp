#include "nusample/nnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nusample/error.hpp"
#include "nusample/rng.hpp"
#include "nusample/simd.hpp"

namespace nusample {

std::string to_string(NetworkKind kind) {
    return kind == NetworkKind::autoencoder ? "autoencoder" : "feedforward";
}

std::string to_string(Activation act) {
    switch (act) {
        case Activation::tanh: return "tanh";
        case Activation::relu: return "relu";
        case Activation::identity: return "identity";
    }
    return "identity";
}

std::string to_string(Optimizer opt) {
    return opt == Optimizer::adam ? "adam" : "sgd";
}

Optimizer parse_optimizer(const std::string& s) {
    if (s == "adam") return Optimizer::adam;
    if (s == "sgd") return Optimizer::sgd;
    throw Error(ErrorKind::config, "unknown optimizer '" + s + "'");
}

NetworkKind parse_network_kind(const std::string& s) {
    if (s == "feedforward") return NetworkKind::feedforward;
    if (s == "autoencoder") return NetworkKind::autoencoder;
    throw Error(ErrorKind::config, "unknown network kind '" + s + "'");
}

Activation parse_activation(const std::string& s) {
    if (s == "tanh") return Activation::tanh;
    if (s == "relu") return Activation::relu;
    if (s == "identity") return Activation::identity;
    throw Error(ErrorKind::config, "unknown activation '" + s + "'");
}

void NetworkSpec::validate() const {
    if (layer_sizes.size() < 2) throw Error(ErrorKind::config, "network: need at least input and output layers");
    if (std::find(layer_sizes.begin(), layer_sizes.end(), 0u) != layer_sizes.end())
        throw Error(ErrorKind::config, "network: layer sizes must be positive");
    if (layer_sizes.front() != layer_sizes.back())
        throw Error(ErrorKind::config, "network: output size must equal input size");
    if (kind == NetworkKind::autoencoder) {
        if (layer_sizes.size() < 3) throw Error(ErrorKind::config, "autoencoder: needs a hidden layer");
        const std::size_t middle = layer_sizes[layer_sizes.size() / 2];
        const std::size_t smallest = *std::min_element(layer_sizes.begin() + 1, layer_sizes.end() - 1);
        if (middle >= layer_sizes.front() || middle != smallest)
            throw Error(ErrorKind::config, "autoencoder: middle layer must be the strictly smaller bottleneck");
    }
}

std::string to_string(LayerWidths w) { return w == LayerWidths::narrow ? "narrow" : "full_rank"; }

LayerWidths parse_layer_widths(const std::string& s) {
    if (s == "full_rank") return LayerWidths::full_rank;
    if (s == "narrow") return LayerWidths::narrow;
    throw Error(ErrorKind::config, "unknown layer widths '" + s + "'");
}

NetworkSpec choose_architecture(std::size_t m, std::size_t threshold, LayerWidths widths) {
    if (m < 1) throw Error(ErrorKind::config, "choose_architecture: m must be >= 1");
    if (threshold < 1) throw Error(ErrorKind::config, "choose_architecture: threshold must be >= 1");
    auto ceil_frac = [m](std::size_t num, std::size_t den) { return (m * num + den - 1) / den; };

    // The output is affine in the last hidden layer, so any layer next to the
    // output that is narrower than m puts a floor under the achievable
    // reconstruction error. full_rank keeps only the middle layer narrow.
    if (m > threshold) {
        const std::size_t middle = ceil_frac(1, 2);
        const std::size_t outer = widths == LayerWidths::narrow ? ceil_frac(3, 4) : 2 * m;
        return {{m, outer, middle, outer, m}, NetworkKind::autoencoder, Activation::tanh, Activation::identity};
    }
    const std::size_t hidden = widths == LayerWidths::narrow ? 5 : std::max<std::size_t>(5, m + 1);
    return {{m, hidden, hidden, m}, NetworkKind::feedforward, Activation::tanh, Activation::identity};
}

void TrainConfig::validate() const {
    if (max_epochs < 1) throw Error(ErrorKind::config, "train: max_epochs must be >= 1");
    if (!(learning_rate > 0.0)) throw Error(ErrorKind::config, "train: learning_rate must be > 0");
    if (!(target_mse > 0.0)) throw Error(ErrorKind::config, "train: target_mse must be > 0");
    if (batch_size < 1) throw Error(ErrorKind::config, "train: batch_size must be >= 1");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(ErrorKind::config, "train: momentum must be in [0, 1)");
}

std::vector<double> Reconstructor::reconstruct(std::span<const double> x) const {
    if (x.size() != input_dim())
        throw Error(ErrorKind::shape, "reconstruct: input has " + std::to_string(x.size()) + " values, model expects " +
                                          std::to_string(input_dim()));
    std::vector<double> out(input_dim());
    reconstruct_into(x, out);
    return out;
}

TrainedReconstructor::TrainedReconstructor(NetworkSpec spec, std::vector<DenseLayer> layers)
    : spec_(std::move(spec)), layers_(std::move(layers)) {
    spec_.validate();
    if (layers_.size() + 1 != spec_.layer_sizes.size()) throw Error(ErrorKind::shape, "network: layer count mismatch");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& L = layers_[l];
        if (L.weights.cols() != spec_.layer_sizes[l] || L.weights.rows() != spec_.layer_sizes[l + 1] ||
            L.bias.size() != spec_.layer_sizes[l + 1])
            throw Error(ErrorKind::shape, "network: weight shapes inconsistent with layer sizes");
    }
}

TrainedReconstructor TrainedReconstructor::identity(std::size_t m) {
    DenseLayer layer{Matrix(m, m), std::vector<double>(m, 0.0)};
    for (std::size_t i = 0; i < m; ++i) layer.weights(i, i) = 1.0;
    NetworkSpec spec{{m, m}, NetworkKind::feedforward, Activation::tanh, Activation::identity};
    return TrainedReconstructor(std::move(spec), {std::move(layer)});
}

namespace {

void activate(Activation act, std::span<double> v) {
    switch (act) {
        case Activation::tanh:
            for (auto& x : v) x = std::tanh(x);
            break;
        case Activation::relu:
            for (auto& x : v) x = x > 0.0 ? x : 0.0;
            break;
        case Activation::identity:
            break;
    }
}

// Derivative expressed through the activation's output.
void scale_by_derivative(Activation act, std::span<const double> out, std::span<double> delta) {
    switch (act) {
        case Activation::tanh:
            for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= 1.0 - out[i] * out[i];
            break;
        case Activation::relu:
            for (std::size_t i = 0; i < delta.size(); ++i)
                if (out[i] <= 0.0) delta[i] = 0.0;
            break;
        case Activation::identity:
            break;
    }
}

// Per-layer activations and deltas for one sample, reused across samples.
struct Workspace {
    std::vector<std::vector<double>> acts;    // acts[0] = input, acts[l+1] = layer l output
    std::vector<std::vector<double>> deltas;  // deltas[l] sized like acts[l+1]

    explicit Workspace(const NetworkSpec& spec) {
        for (auto n : spec.layer_sizes) acts.emplace_back(n);
        for (std::size_t l = 1; l < spec.layer_sizes.size(); ++l) deltas.emplace_back(spec.layer_sizes[l]);
    }
};

void forward(const NetworkSpec& spec, const std::vector<DenseLayer>& layers, std::span<const double> x, Workspace& ws) {
    const auto& k = simd::kernels();
    std::copy(x.begin(), x.end(), ws.acts[0].begin());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& L = layers[l];
        k.gemv(L.weights.data().data(), L.weights.rows(), L.weights.cols(), ws.acts[l].data(), L.bias.data(),
               ws.acts[l + 1].data());
        const bool last = l + 1 == layers.size();
        activate(last ? spec.output_activation : spec.hidden_activation, ws.acts[l + 1]);
    }
}

// Adds d(scale * ||out - x||^2)/d(params) for one sample into `grads`.
void backward(const NetworkSpec& spec, const std::vector<DenseLayer>& layers, std::span<const double> x, double scale,
              Workspace& ws, std::vector<DenseLayer>& grads) {
    const auto& k = simd::kernels();
    const std::size_t L = layers.size();
    auto& out = ws.acts[L];
    auto& top = ws.deltas[L - 1];
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = 2.0 * scale * (out[i] - x[i]);
    scale_by_derivative(spec.output_activation, out, top);

    for (std::size_t l = L; l-- > 0;) {
        const auto& delta = ws.deltas[l];
        const auto& input = ws.acts[l];
        auto& g = grads[l];
        const std::size_t in = input.size();
        for (std::size_t j = 0; j < delta.size(); ++j) {
            if (delta[j] == 0.0) continue;
            k.axpy(delta[j], input.data(), g.weights.row(j).data(), in);
            g.bias[j] += delta[j];
        }
        if (l == 0) break;
        auto& prev = ws.deltas[l - 1];
        std::fill(prev.begin(), prev.end(), 0.0);
        const auto& W = layers[l].weights;
        for (std::size_t j = 0; j < delta.size(); ++j)
            if (delta[j] != 0.0) k.axpy(delta[j], W.row(j).data(), prev.data(), in);
        scale_by_derivative(spec.hidden_activation, ws.acts[l], prev);
    }
}

std::vector<DenseLayer> zeros_like(const std::vector<DenseLayer>& layers) {
    std::vector<DenseLayer> z;
    z.reserve(layers.size());
    for (const auto& L : layers) z.push_back({Matrix(L.weights.rows(), L.weights.cols()), std::vector<double>(L.bias.size())});
    return z;
}

void fill_zero(std::vector<DenseLayer>& layers) {
    for (auto& L : layers) {
        std::fill(L.weights.data().begin(), L.weights.data().end(), 0.0);
        std::fill(L.bias.begin(), L.bias.end(), 0.0);
    }
}

}  // namespace

void TrainedReconstructor::reconstruct_into(std::span<const double> x, std::span<double> out) const {
    if (x.size() != input_dim() || out.size() != input_dim())
        throw Error(ErrorKind::shape, "reconstruct: expected length " + std::to_string(input_dim()));
    Workspace ws(spec_);
    forward(spec_, layers_, x, ws);
    std::copy(ws.acts.back().begin(), ws.acts.back().end(), out.begin());
}

double reconstruction_mse(const Reconstructor& model, const Matrix& data) {
    if (data.cols() != model.input_dim()) throw Error(ErrorKind::shape, "reconstruction_mse: column mismatch");
    if (data.empty()) return 0.0;
    std::vector<double> out(data.cols());
    double total = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        model.reconstruct_into(data.row(r), out);
        total += simd::squared_distance(data.row(r), out);
    }
    return total / static_cast<double>(data.rows() * data.cols());
}

TrainedReconstructor train_reconstructor(const Matrix& data, const NetworkSpec& spec, const TrainConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (data.empty()) throw Error(ErrorKind::empty_input, "train_reconstructor: no training rows");
    if (data.cols() != spec.input_dim())
        throw Error(ErrorKind::shape, "train_reconstructor: data has " + std::to_string(data.cols()) +
                                          " columns, network expects " + std::to_string(spec.input_dim()));

    Rng init_rng(derive_seed(cfg.seed, 1));
    Rng order_rng(derive_seed(cfg.seed, 2));

    std::vector<DenseLayer> layers;
    for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
        const std::size_t in = spec.layer_sizes[l], out = spec.layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
        DenseLayer layer{Matrix(out, in), std::vector<double>(out, 0.0)};
        for (auto& w : layer.weights.data()) w = init_rng.uniform(-limit, limit);
        layers.push_back(std::move(layer));
    }

    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    const std::size_t batch = std::min(cfg.batch_size, n);
    auto grads = zeros_like(layers);
    auto velocity = zeros_like(layers);  // first moment (adam) or momentum buffer (sgd)
    auto second = zeros_like(layers);    // adam only
    std::size_t step = 0;
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    auto update = [&](std::span<double> w, std::span<const double> g, std::span<double> v, std::span<double> s) {
        if (cfg.optimizer == Optimizer::sgd) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                v[i] = cfg.momentum * v[i] - cfg.learning_rate * g[i];
                w[i] += v[i];
            }
            return;
        }
        const double t = static_cast<double>(step);
        const double lr = cfg.learning_rate * std::sqrt(1.0 - std::pow(beta2, t)) / (1.0 - std::pow(beta1, t));
        for (std::size_t i = 0; i < w.size(); ++i) {
            v[i] = beta1 * v[i] + (1.0 - beta1) * g[i];
            s[i] = beta2 * s[i] + (1.0 - beta2) * g[i] * g[i];
            w[i] -= lr * v[i] / (std::sqrt(s[i]) + eps);
        }
    };
    Workspace ws(spec);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    auto full_mse = [&] {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            forward(spec, layers, data.row(r), ws);
            total += simd::squared_distance(data.row(r), ws.acts.back());
        }
        return total / static_cast<double>(n * m);
    };

    std::vector<double> history;
    std::size_t epoch = 0;
    double mse = full_mse();
    while (epoch < cfg.max_epochs && mse > cfg.target_mse) {
        order_rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t stop = std::min(start + batch, n);
            const double scale = 1.0 / static_cast<double>((stop - start) * m);
            fill_zero(grads);
            for (std::size_t i = start; i < stop; ++i) {
                const auto x = data.row(order[i]);
                forward(spec, layers, x, ws);
                backward(spec, layers, x, scale, ws, grads);
            }
            ++step;
            for (std::size_t l = 0; l < layers.size(); ++l) {
                update(layers[l].weights.data(), grads[l].weights.data(), velocity[l].weights.data(),
                       second[l].weights.data());
                update(layers[l].bias, grads[l].bias, velocity[l].bias, second[l].bias);
            }
        }
        ++epoch;
        mse = full_mse();
        history.push_back(mse);
        if (!std::isfinite(mse)) throw Error(ErrorKind::config, "train_reconstructor: loss diverged; lower the learning rate");
    }

    TrainedReconstructor trained(spec, std::move(layers));
    trained.final_training_mse = mse;
    trained.epochs_run = epoch;
    trained.loss_history = std::move(history);
    return trained;
}

std::vector<double> mse_gradient(const TrainedReconstructor& model, const Matrix& data) {
    if (data.cols() != model.input_dim()) throw Error(ErrorKind::shape, "mse_gradient: column mismatch");
    if (data.empty()) throw Error(ErrorKind::empty_input, "mse_gradient: no rows");
    const auto& layers = model.layers();
    auto grads = zeros_like(layers);
    Workspace ws(model.spec());
    const double scale = 1.0 / static_cast<double>(data.rows() * data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        forward(model.spec(), layers, data.row(r), ws);
        backward(model.spec(), layers, data.row(r), scale, ws, grads);
    }
    std::vector<double> flat;
    for (const auto& g : grads) {
        flat.insert(flat.end(), g.weights.data().begin(), g.weights.data().end());
        flat.insert(flat.end(), g.bias.begin(), g.bias.end());
    }
    return flat;
}

std::vector<DistanceRecord> reconstruction_distances(const Reconstructor& model, std::span<const std::size_t> rows,
                                                     const Matrix& data) {
    if (data.cols() != model.input_dim()) throw Error(ErrorKind::shape, "reconstruction_distances: column mismatch");
    std::vector<DistanceRecord> out;
    out.reserve(rows.size());
    std::vector<double> rec(data.cols());
    for (auto idx : rows) {
        if (idx >= data.rows()) throw Error(ErrorKind::shape, "reconstruction_distances: row index out of range");
        model.reconstruct_into(data.row(idx), rec);
        out.push_back({idx, simd::squared_distance(data.row(idx), rec)});
    }
    std::sort(out.begin(), out.end(), [](const DistanceRecord& a, const DistanceRecord& b) {
        return a.dist != b.dist ? a.dist > b.dist : a.index < b.index;
    });
    return out;
}

}  // namespace nusample
