#pragma once

// Float reference network, its trainer, and the float -> integer quantizer.
//
// Scales: an activation of 1.0 is 127 in integer form; the accumulator stores
// round(127 * w); hidden weights are round(2^shift * w) so that (sum >> shift) lands
// back on the 127 scale; the output weights absorb both the 1/600 target scaling and
// the output-scale divisor, so raw / output_scale is centipawns directly.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexazero/eunn.hpp"
#include "hexazero/neural_net.hpp"

namespace hexazero::eunn {

inline constexpr double kTargetClampCp = 2000.0;
inline constexpr double kTargetScaleCp = 600.0;  // one network output unit in centipawns

struct QuantScheme {
    int activation_shift = 6;
    std::int32_t output_scale = 16;

    double hidden_weight_scale() const { return static_cast<double>(1 << activation_shift); }
    // raw = 127 * w_q-units; raw / output_scale must equal 600 * y
    double output_weight_scale() const { return kTargetScaleCp * output_scale / kActivationMax; }
};

struct FloatEvalNet {
    int half_width = kDefaultHalfWidth;
    std::vector<double> input_weights;  // kFeatures x half_width, feature-major
    std::vector<double> input_biases;
    nn::DenseLayer l2;   // 2*half_width -> 32, clipped ReLU
    nn::DenseLayer l3;   // 32 -> 32, clipped ReLU
    nn::DenseLayer out;  // 32 -> 1, linear

    static FloatEvalNet zeros(int half_width = kDefaultHalfWidth, int l2 = kDefaultL2, int l3 = kDefaultL3);
    static FloatEvalNet random(Rng& rng, int half_width = kDefaultHalfWidth);

    double* column(FeatureIndex f) { return input_weights.data() + static_cast<std::size_t>(f.value) * half_width; }
    const double* column(FeatureIndex f) const {
        return input_weights.data() + static_cast<std::size_t>(f.value) * half_width;
    }

    // Network output in target units (centipawns / 600).
    double forward(const ChessPosition& p) const;
    double evaluate_cp(const ChessPosition& p) const { return forward(p) * kTargetScaleCp; }
    bool all_finite() const;

    friend bool operator==(const FloatEvalNet&, const FloatEvalNet&) = default;
};

struct EvalSample {
    ChessPosition position;
    int centipawns = 0;  // side-to-move perspective
};

double scaled_target(int centipawns);

std::vector<EvalSample> material_dataset(std::size_t n, std::uint64_t seed, bool use_piece_square = false);

struct FloatGradients {
    std::unordered_map<std::uint16_t, std::vector<double>> input_columns;  // touched columns only
    std::vector<double> input_biases;
    nn::Gradients dense;  // l2, l3, out
};

// Mean of (y - t)^2 over the batch.
double float_loss(const FloatEvalNet& net, std::span<const EvalSample> batch);
double float_loss_and_gradient(const FloatEvalNet& net, std::span<const EvalSample> batch, FloatGradients& g);
void float_sgd_step(FloatEvalNet& net, const FloatGradients& g, double lr);

struct FloatTrainConfig {
    std::size_t epochs = 8;
    std::size_t batch_size = 32;
    double learning_rate = 0.05;
    std::uint64_t seed = 42;
    // Keep dense weights inside the range the quantizer can represent.
    bool clamp_to_scheme = true;
    QuantScheme scheme{};
};

// Returns the mean training loss of each epoch. Throws std::invalid_argument on an empty dataset.
std::vector<double> train_float(FloatEvalNet& net, std::span<const EvalSample> ds, const FloatTrainConfig& cfg);

struct QuantizationReport {
    std::size_t total_weights = 0;
    std::size_t clipped_weights = 0;
    double clipped_fraction() const {
        return total_weights ? static_cast<double>(clipped_weights) / static_cast<double>(total_weights) : 0.0;
    }
    bool saturation_warning() const { return clipped_fraction() > 0.01; }
    std::string summary() const;
};

QuantEvalNet quantize(const FloatEvalNet& f, const QuantScheme& scheme = {}, QuantizationReport* report = nullptr);
FloatEvalNet dequantize(const QuantEvalNet& q);

// |quantized - float| in centipawns for one position.
//   worst_case: the rounding residuals pushed through each layer as intervals; always holds.
//   weight_offset: the exact effect of weight rounding (dequantized twin minus float net).
//   arithmetic_mean / arithmetic_sigma: flooring shifts and the final truncation modelled as
//   independent uniform roundings on top of the twin.
struct QuantErrorBound {
    double worst_case = 0.0;
    double weight_offset = 0.0;
    double arithmetic_mean = 0.0;
    double arithmetic_sigma = 0.0;

    double statistical(double k = 3.0) const { return std::abs(weight_offset + arithmetic_mean) + k * arithmetic_sigma; }
};

class QuantErrorModel {
public:
    // Both nets must outlive the model.
    QuantErrorModel(const FloatEvalNet& f, const QuantEvalNet& q);
    QuantErrorBound bound(const ChessPosition& p) const;

private:
    const FloatEvalNet* float_;
    const QuantEvalNet* quant_;
    FloatEvalNet twin_;
};

}  // namespace hexazero::eunn
