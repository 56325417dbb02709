#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexazero/game.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::nn {

enum class Activation { Relu, Sigmoid, Tanh, Softmax, Linear, ClippedRelu };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

double sigmoid(double x);
double relu(double x);
double clipped_relu(double x);
// Max-subtracted for stability.
std::vector<double> softmax(std::span<const double> logits);
// In place; softmax is applied over the whole span.
void activate(Activation a, std::span<double> values);
// Elementwise derivative expressed through the activation output. Not defined for Softmax.
double derivative_from_output(Activation a, double out);

inline constexpr double kLogEpsilon = 1e-12;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelVersionError : public ModelFormatError {
public:
    using ModelFormatError::ModelFormatError;
};

struct DenseLayer {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<double> weights;  // out_dim x in_dim, row-major
    std::vector<double> biases;
    Activation activation = Activation::Linear;

    DenseLayer() = default;
    DenseLayer(int in, int out, Activation act);

    double& weight(int row, int col) { return weights[static_cast<std::size_t>(row) * in_dim + col]; }
    double weight(int row, int col) const { return weights[static_cast<std::size_t>(row) * in_dim + col]; }

    // Uniform in [-1/sqrt(in_dim), +1/sqrt(in_dim)] for weights and biases.
    void initialize(Rng& rng);
    void forward(std::span<const double> x, std::span<double> out) const;
    std::size_t parameter_count() const { return weights.size() + biases.size(); }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct LayerGrad {
    std::vector<double> dw;
    std::vector<double> db;
};

using Gradients = std::vector<LayerGrad>;

Gradients zero_gradients(std::span<const DenseLayer> layers);
void sgd_step(std::span<DenseLayer> layers, const Gradients& grads, double lr);
double weight_norm_sq(std::span<const DenseLayer> layers);

struct SgdConfig {
    double learning_rate = 0.1;
    std::size_t batch_size = 16;
    std::size_t epochs = 1;
    std::uint64_t seed = 42;
};

struct Sample {
    std::vector<double> input;
    std::vector<double> target;
};

enum class LossKind {
    HalfSquaredError,  // 0.5 * sum_k (out_k - t_k)^2 per sample
    CrossEntropy,      // -sum_k t_k log out_k, softmax output layer
};

// Plain feed-forward stack with a single output and one loss.
class Mlp {
public:
    Mlp() = default;
    explicit Mlp(std::vector<DenseLayer> layers);
    // dims = {in, hidden..., out}; hidden layers use hidden_act.
    Mlp(std::span<const int> dims, Activation hidden_act, Activation out_act, Rng& rng);

    std::vector<double> forward(std::span<const double> x) const;
    double loss(std::span<const Sample> batch, LossKind kind) const;
    Gradients backward(std::span<const Sample> batch, LossKind kind) const;
    void sgd_step(const Gradients& g, double lr);
    std::vector<double> fit(std::span<const Sample> data, const SgdConfig& cfg, LossKind kind);

    std::vector<DenseLayer>& layers() { return layers_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }

private:
    std::vector<DenseLayer> layers_;
};

struct TrainSample {
    std::vector<double> input;          // 21 network-input bits
    std::vector<double> target_policy;  // 28 entries summing to 1
    double target_value = 0.0;          // [-1, 1]
};

struct HeadOutput {
    std::vector<double> policy;
    double value = 0.0;
};

struct LossTerms {
    double value = 0.0;   // (z - v)^2
    double policy = 0.0;  // -pi^T log p
    double total = 0.0;
};

// (z - v)^2 - pi^T log p for a single sample; log p clamped at kLogEpsilon.
LossTerms sample_loss(std::span<const double> policy_out, double value_out, const TrainSample& target);
// Batch mean of sample_loss plus reg_c * weight_norm_sq.
double combined_loss(std::span<const HeadOutput> outputs, std::span<const TrainSample> targets, double reg_c,
                     double weight_norm_sq);

// Softmax policy head and tanh value head over a shared ReLU trunk.
class TwoHeadNet {
public:
    static constexpr int kHiddenLayers = 5;
    static constexpr int kHiddenWidth = 128;

    TwoHeadNet() = default;
    TwoHeadNet(std::uint64_t seed, int hidden_layers = kHiddenLayers, int hidden_width = kHiddenWidth);
    TwoHeadNet(std::vector<DenseLayer> trunk, DenseLayer policy_head, DenseLayer value_head);

    static TwoHeadNet zeros(int hidden_layers = kHiddenLayers, int hidden_width = kHiddenWidth);

    HeadOutput forward(std::span<const double> input) const;
    HeadOutput forward(const NetInput& bits) const;

    double loss(std::span<const TrainSample> batch, double reg_c = 0.0) const;
    // Gradients of loss(batch, reg_c): trunk layers first, then policy head, then value head.
    Gradients backward(std::span<const TrainSample> batch, double reg_c = 0.0) const;
    void sgd_step(const Gradients& g, double lr);
    // Returns the mean training loss of each epoch.
    std::vector<double> fit(std::span<const TrainSample> data, const SgdConfig& cfg, double reg_c = 0.0);

    // All layers in file order: trunk, policy head, value head.
    std::vector<DenseLayer>& layers() { return layers_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }
    const DenseLayer& policy_head() const { return layers_[layers_.size() - 2]; }
    const DenseLayer& value_head() const { return layers_.back(); }
    std::size_t trunk_size() const { return layers_.size() - 2; }

    friend bool operator==(const TwoHeadNet&, const TwoHeadNet&) = default;

private:
    std::vector<DenseLayer> layers_;

    void validate() const;
    Gradients backward_with_loss(std::span<const TrainSample> batch, double reg_c, double* loss) const;
};

std::vector<double> to_input_vector(const NetInput& bits);

// Text model format "HZNET 1".
void write_layers(std::ostream& os, std::span<const DenseLayer> layers);
std::vector<DenseLayer> read_layers(std::istream& is);

void save(const TwoHeadNet& net, const std::filesystem::path& path);
TwoHeadNet load(const std::filesystem::path& path);
void save(const Mlp& net, const std::filesystem::path& path);
Mlp load_mlp(const std::filesystem::path& path);

}  // namespace hexazero::nn
