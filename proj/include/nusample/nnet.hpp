#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nusample/matrix.hpp"

namespace nusample {

enum class NetworkKind { feedforward, autoencoder };
enum class Activation { tanh, relu, identity };

std::string to_string(NetworkKind kind);
std::string to_string(Activation act);
NetworkKind parse_network_kind(const std::string& s);
Activation parse_activation(const std::string& s);

/// Shape of an input-dimension-preserving network.
struct NetworkSpec {
    std::vector<std::size_t> layer_sizes;  // first == last == m
    NetworkKind kind = NetworkKind::feedforward;
    Activation hidden_activation = Activation::tanh;
    Activation output_activation = Activation::identity;

    std::size_t input_dim() const { return layer_sizes.front(); }

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

inline constexpr std::size_t kDefaultArchitectureThreshold = 30;

/// Layer widths used by choose_architecture.
///   full_rank : autoencoder [m, 2m, ceil(m/2), 2m, m]; feedforward
///               [m, h, h, m] with h = max(5, m + 1)
///   narrow    : autoencoder [m, ceil(3m/4), ceil(m/2), ceil(3m/4), m];
///               feedforward [m, 5, 5, m]
enum class LayerWidths { full_rank, narrow };

std::string to_string(LayerWidths w);
LayerWidths parse_layer_widths(const std::string& s);

/// Autoencoder when m > threshold, feedforward otherwise.
NetworkSpec choose_architecture(std::size_t m, std::size_t threshold = kDefaultArchitectureThreshold,
                                LayerWidths widths = LayerWidths::full_rank);

enum class Optimizer { sgd, adam };

std::string to_string(Optimizer opt);
Optimizer parse_optimizer(const std::string& s);

struct TrainConfig {
    Optimizer optimizer = Optimizer::adam;
    std::size_t max_epochs = 2000;
    double target_mse = 1e-3;
    double learning_rate = 0.003;
    std::size_t batch_size = 32;  // clamped to the sample count
    double momentum = 0.0;        // sgd only; 0 = plain gradient descent
    std::uint64_t seed = 0;

    void validate() const;
};

struct DenseLayer {
    Matrix weights;  // out x in
    std::vector<double> bias;
};

/// Anything that maps a length-m vector to a length-m reconstruction.
class Reconstructor {
public:
    virtual ~Reconstructor() = default;
    virtual std::size_t input_dim() const = 0;
    virtual void reconstruct_into(std::span<const double> x, std::span<double> out) const = 0;

    std::vector<double> reconstruct(std::span<const double> x) const;
};

class TrainedReconstructor final : public Reconstructor {
public:
    TrainedReconstructor() = default;
    TrainedReconstructor(NetworkSpec spec, std::vector<DenseLayer> layers);

    /// Single linear layer with identity weights; reconstructs exactly.
    static TrainedReconstructor identity(std::size_t m);

    std::size_t input_dim() const override { return spec_.input_dim(); }
    void reconstruct_into(std::span<const double> x, std::span<double> out) const override;

    const NetworkSpec& spec() const noexcept { return spec_; }
    const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
    std::vector<DenseLayer>& mutable_layers() noexcept { return layers_; }

    double final_training_mse = 0.0;
    std::size_t epochs_run = 0;
    std::vector<double> loss_history;  // full-data MSE after each epoch

private:
    NetworkSpec spec_;
    std::vector<DenseLayer> layers_;
};

/// Mean over rows and columns of the squared reconstruction error.
double reconstruction_mse(const Reconstructor& model, const Matrix& data);

/// Fits the network to reproduce `data` by minimising the mean squared
/// reconstruction error with mini-batch Adam (or plain/momentum SGD). No
/// validation split and no regularisation: the point is to overfit. Stops
/// once the full-data MSE reaches cfg.target_mse or after cfg.max_epochs.
/// Deterministic given cfg.seed.
TrainedReconstructor train_reconstructor(const Matrix& data, const NetworkSpec& spec, const TrainConfig& cfg);

/// Analytic gradient of the full-data MSE with respect to every parameter,
/// flattened layer by layer as (weights row-major, then bias).
std::vector<double> mse_gradient(const TrainedReconstructor& model, const Matrix& data);

struct DistanceRecord {
    std::size_t index;
    double dist;  // squared Euclidean reconstruction distance
};

/// Distances for the listed rows of `data`, sorted by dist descending with
/// ties broken by ascending index.
std::vector<DistanceRecord> reconstruction_distances(const Reconstructor& model,
                                                     std::span<const std::size_t> rows, const Matrix& data);

/// JSON model dump/load. Doubles are written in shortest round-trip form so
/// a load reproduces the weights bit for bit.
std::string model_to_json(const TrainedReconstructor& model);
TrainedReconstructor model_from_json(const std::string& text);
void save_model(const TrainedReconstructor& model, const std::string& path);
TrainedReconstructor load_model(const std::string& path);

}  // namespace nusample
