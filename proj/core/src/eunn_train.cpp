#include "hexazero/eunn_train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hexazero::eunn {

namespace {


struct Trace {
    std::array<std::vector<FeatureIndex>, 2> features;  // [0] side to move, [1] other
    std::vector<double> acc;                            // 2*hw pre-activation, stm half first
    std::vector<double> h0, h2, h3;
    double y = 0.0;
};

void forward_trace(const FloatEvalNet& net, const ChessPosition& p, Trace& t) {
    const auto hw = static_cast<std::size_t>(net.half_width);
    const Color stm = p.side_to_move();
    t.features[0] = active_features(p, stm);
    t.features[1] = active_features(p, opposite(stm));
    t.acc.assign(2 * hw, 0.0);
    for (std::size_t h = 0; h < 2; ++h) {
        double* a = t.acc.data() + h * hw;
        std::copy(net.input_biases.begin(), net.input_biases.end(), a);
        for (FeatureIndex f : t.features[h]) {
            const double* col = net.column(f);
            for (std::size_t i = 0; i < hw; ++i) a[i] += col[i];
        }
    }
    t.h0.resize(2 * hw);
    for (std::size_t i = 0; i < 2 * hw; ++i) t.h0[i] = nn::clipped_relu(t.acc[i]);
    t.h2.resize(static_cast<std::size_t>(net.l2.out_dim));
    t.h3.resize(static_cast<std::size_t>(net.l3.out_dim));
    net.l2.forward(t.h0, t.h2);
    net.l3.forward(t.h2, t.h3);
    double y = 0.0;
    net.out.forward(t.h3, std::span<double>(&y, 1));
    t.y = y;
}

// dL/d(inputs) for one dense layer, given dL/d(pre-activation) `delta`; accumulates weight grads.
std::vector<double> dense_backward(const nn::DenseLayer& layer, std::span<const double> in,
                                   std::span<const double> delta, nn::LayerGrad& g) {
    std::vector<double> d_in(static_cast<std::size_t>(layer.in_dim), 0.0);
    for (int o = 0; o < layer.out_dim; ++o) {
        const double d = delta[static_cast<std::size_t>(o)];
        if (d == 0.0) continue;
        g.db[static_cast<std::size_t>(o)] += d;
        double* gw = g.dw.data() + static_cast<std::size_t>(o) * layer.in_dim;
        const double* w = layer.weights.data() + static_cast<std::size_t>(o) * layer.in_dim;
        for (int i = 0; i < layer.in_dim; ++i) {
            gw[i] += d * in[static_cast<std::size_t>(i)];
            d_in[static_cast<std::size_t>(i)] += d * w[i];
        }
    }
    return d_in;
}

void clamp_weights(nn::DenseLayer& layer, double scale) {
    const double lo = -128.0 / scale;
    const double hi = 127.0 / scale;
    for (auto& w : layer.weights) w = std::clamp(w, lo, hi);
}

template <typename Int>
Int saturate(double v, std::size_t& clipped) {
    const double r = std::round(v);
    constexpr double lo = static_cast<double>(std::numeric_limits<Int>::min());
    constexpr double hi = static_cast<double>(std::numeric_limits<Int>::max());
    if (r < lo || r > hi) {
        ++clipped;
        return static_cast<Int>(std::clamp(r, lo, hi));
    }
    return static_cast<Int>(r);
}

template <typename Int>
std::vector<Int> quantize_all(std::span<const double> v, double scale, std::size_t& clipped) {
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = saturate<Int>(v[i] * scale, clipped);
    return out;
}

template <typename Int>
std::vector<double> dequantize_all(const std::vector<Int>& v, double scale) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]) / scale;
    return out;
}

// Largest move of clamp(z, 0, 127) when z may lie anywhere in [lo, hi].
double clamp_spread(double z, double lo, double hi) {
    const auto c = [](double v) { return std::clamp(v, 0.0, static_cast<double>(kActivationMax)); };
    return std::max(std::abs(c(lo) - c(z)), std::abs(c(hi) - c(z)));
}

// Interval on the integer pre-activation of one dense layer, in units of in_scale * w_scale:
// weight residuals times the float inputs, quantized weights times the input error, bias residual.
std::vector<double> dense_error(const nn::DenseLayer& f, std::span<const std::int8_t> wq,
                                std::span<const std::int32_t> bq, std::span<const double> x_float,
                                std::span<const double> in_err, double w_scale) {
    const auto in_dim = static_cast<std::size_t>(f.in_dim);
    std::vector<double> err(static_cast<std::size_t>(f.out_dim));
    for (std::size_t o = 0; o < err.size(); ++o) {
        double e = std::abs(static_cast<double>(bq[o]) - kActivationMax * w_scale * f.biases[o]);
        for (std::size_t i = 0; i < in_dim; ++i) {
            const double wf = f.weights[o * in_dim + i];
            const double w = wq[o * in_dim + i];
            e += std::abs(w - w_scale * wf) * kActivationMax * x_float[i] + std::abs(w) * in_err[i];
        }
        err[o] = e;
    }
    return err;
}

// Error after the flooring shift and clipped ReLU, in activation units.
std::vector<double> clipped_error(std::span<const double> pre_float, std::span<const double> pre_err, double w_scale) {
    std::vector<double> out(pre_float.size());
    for (std::size_t o = 0; o < out.size(); ++o) {
        const double z = kActivationMax * pre_float[o];
        const double e = pre_err[o] / w_scale;
        out[o] = clamp_spread(z, z - e - 1.0, z + e);
    }
    return out;
}

}  // namespace

FloatEvalNet FloatEvalNet::zeros(int half_width, int l2, int l3) {
    if (half_width <= 0 || l2 <= 0 || l3 <= 0) throw std::invalid_argument("layer widths must be positive");
    FloatEvalNet n;
    n.half_width = half_width;
    n.input_weights.assign(static_cast<std::size_t>(kFeatures) * half_width, 0.0);
    n.input_biases.assign(static_cast<std::size_t>(half_width), 0.0);
    n.l2 = nn::DenseLayer(2 * half_width, l2, nn::Activation::ClippedRelu);
    n.l3 = nn::DenseLayer(l2, l3, nn::Activation::ClippedRelu);
    n.out = nn::DenseLayer(l3, 1, nn::Activation::Linear);
    return n;
}

FloatEvalNet FloatEvalNet::random(Rng& rng, int half_width) {
    FloatEvalNet n = zeros(half_width);
    // Accumulators start inside the linear part of the clipped ReLU.
    std::uniform_real_distribution<double> w(-0.1, 0.1);
    std::uniform_real_distribution<double> b(0.25, 0.75);
    for (auto& x : n.input_weights) x = w(rng);
    for (auto& x : n.input_biases) x = b(rng);
    n.l2.initialize(rng);
    n.l3.initialize(rng);
    n.out.initialize(rng);
    return n;
}

double FloatEvalNet::forward(const ChessPosition& p) const {
    Trace t;
    forward_trace(*this, p, t);
    return t.y;
}

bool FloatEvalNet::all_finite() const {
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return finite(input_weights) && finite(input_biases) && finite(l2.weights) && finite(l2.biases) &&
           finite(l3.weights) && finite(l3.biases) && finite(out.weights) && finite(out.biases);
}

double scaled_target(int centipawns) {
    return std::clamp(static_cast<double>(centipawns), -kTargetClampCp, kTargetClampCp) / kTargetScaleCp;
}

std::vector<EvalSample> material_dataset(std::size_t n, std::uint64_t seed, bool use_piece_square) {
    Rng rng(seed);
    std::vector<EvalSample> ds;
    ds.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ChessPosition p = random_position(rng);
        const int cp = material_eval(p, use_piece_square);
        ds.push_back({std::move(p), cp});
    }
    return ds;
}

double float_loss(const FloatEvalNet& net, std::span<const EvalSample> batch) {
    if (batch.empty()) throw std::invalid_argument("float_loss: empty batch");
    Trace t;
    double total = 0.0;
    for (const auto& s : batch) {
        forward_trace(net, s.position, t);
        const double e = t.y - scaled_target(s.centipawns);
        total += e * e;
    }
    return total / static_cast<double>(batch.size());
}

double float_loss_and_gradient(const FloatEvalNet& net, std::span<const EvalSample> batch, FloatGradients& g) {
    if (batch.empty()) throw std::invalid_argument("float_loss_and_gradient: empty batch");
    const auto hw = static_cast<std::size_t>(net.half_width);
    const std::vector<nn::DenseLayer> dense{net.l2, net.l3, net.out};
    g.input_columns.clear();
    g.input_biases.assign(hw, 0.0);
    g.dense = nn::zero_gradients(dense);
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    Trace t;
    double total = 0.0;
    for (const auto& s : batch) {
        forward_trace(net, s.position, t);
        const double e = t.y - scaled_target(s.centipawns);
        total += e * e;
        const double dy = 2.0 * e * inv_n;
        auto d3 = dense_backward(net.out, t.h3, std::span<const double>(&dy, 1), g.dense[2]);
        for (std::size_t i = 0; i < d3.size(); ++i) d3[i] *= nn::derivative_from_output(net.l3.activation, t.h3[i]);
        auto d2 = dense_backward(net.l3, t.h2, d3, g.dense[1]);
        for (std::size_t i = 0; i < d2.size(); ++i) d2[i] *= nn::derivative_from_output(net.l2.activation, t.h2[i]);
        auto d0 = dense_backward(net.l2, t.h0, d2, g.dense[0]);
        for (std::size_t i = 0; i < d0.size(); ++i) d0[i] *= (t.acc[i] > 0.0 && t.acc[i] < 1.0) ? 1.0 : 0.0;
        for (std::size_t h = 0; h < 2; ++h) {
            const double* dh = d0.data() + h * hw;
            for (std::size_t i = 0; i < hw; ++i) g.input_biases[i] += dh[i];
            for (FeatureIndex f : t.features[h]) {
                auto& col = g.input_columns[f.value];
                if (col.empty()) col.assign(hw, 0.0);
                for (std::size_t i = 0; i < hw; ++i) col[i] += dh[i];
            }
        }
    }
    return total * inv_n;
}

void float_sgd_step(FloatEvalNet& net, const FloatGradients& g, double lr) {
    const auto hw = static_cast<std::size_t>(net.half_width);
    for (const auto& [f, col] : g.input_columns) {
        double* w = net.column(FeatureIndex{f});
        for (std::size_t i = 0; i < hw; ++i) w[i] -= lr * col[i];
    }
    for (std::size_t i = 0; i < hw; ++i) net.input_biases[i] -= lr * g.input_biases[i];
    std::vector<nn::DenseLayer> dense{std::move(net.l2), std::move(net.l3), std::move(net.out)};
    nn::sgd_step(dense, g.dense, lr);
    net.l2 = std::move(dense[0]);
    net.l3 = std::move(dense[1]);
    net.out = std::move(dense[2]);
}

std::vector<double> train_float(FloatEvalNet& net, std::span<const EvalSample> ds, const FloatTrainConfig& cfg) {
    if (ds.empty()) throw std::invalid_argument("train_float: empty dataset");
    if (cfg.batch_size == 0) throw std::invalid_argument("train_float: batch size must be at least 1");
    Rng rng(cfg.seed);
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<EvalSample> batch;
    FloatGradients g;
    std::vector<double> history;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double total = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            batch.clear();
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            for (std::size_t k = start; k < end; ++k) batch.push_back(ds[order[k]]);
            total += float_loss_and_gradient(net, batch, g) * static_cast<double>(batch.size());
            float_sgd_step(net, g, cfg.learning_rate);
            if (cfg.clamp_to_scheme) {
                clamp_weights(net.l2, cfg.scheme.hidden_weight_scale());
                clamp_weights(net.l3, cfg.scheme.hidden_weight_scale());
                clamp_weights(net.out, cfg.scheme.output_weight_scale());
            }
        }
        history.push_back(total / static_cast<double>(ds.size()));
        if (!net.all_finite()) throw std::runtime_error("train_float: parameters diverged");
    }
    return history;
}

std::string QuantizationReport::summary() const {
    std::ostringstream os;
    os << clipped_weights << " of " << total_weights << " weights saturated (" << clipped_fraction() * 100.0 << "%)";
    if (saturation_warning()) os << " -- WARNING: more than 1% clipped";
    return os.str();
}

QuantEvalNet quantize(const FloatEvalNet& f, const QuantScheme& scheme, QuantizationReport* report) {
    if (scheme.activation_shift < 0 || scheme.activation_shift > 30 || scheme.output_scale <= 0)
        throw std::invalid_argument("quantize: bad scheme");
    QuantEvalNet q;
    q.half_width = f.half_width;
    q.l2_width = f.l2.out_dim;
    q.l3_width = f.l3.out_dim;
    q.activation_shift = static_cast<std::uint8_t>(scheme.activation_shift);
    q.output_scale = scheme.output_scale;
    const double a = kActivationMax;
    const double hs = scheme.hidden_weight_scale();
    const double os = scheme.output_weight_scale();
    std::size_t clipped = 0;
    q.input_weights = quantize_all<std::int16_t>(f.input_weights, a, clipped);
    q.input_biases = quantize_all<std::int16_t>(f.input_biases, a, clipped);
    q.l2_weights = quantize_all<std::int8_t>(f.l2.weights, hs, clipped);
    q.l2_biases = quantize_all<std::int32_t>(f.l2.biases, a * hs, clipped);
    q.l3_weights = quantize_all<std::int8_t>(f.l3.weights, hs, clipped);
    q.l3_biases = quantize_all<std::int32_t>(f.l3.biases, a * hs, clipped);
    q.output_weights = quantize_all<std::int8_t>(f.out.weights, os, clipped);
    q.output_bias = quantize_all<std::int32_t>(f.out.biases, a * os, clipped).at(0);
    if (report) {
        report->clipped_weights = clipped;
        report->total_weights = f.input_weights.size() + f.input_biases.size() + f.l2.parameter_count() +
                                f.l3.parameter_count() + f.out.parameter_count();
    }
    q.check_shapes();
    return q;
}

FloatEvalNet dequantize(const QuantEvalNet& q) {
    q.check_shapes();
    const QuantScheme scheme{q.activation_shift, q.output_scale};
    const double a = kActivationMax;
    const double hs = scheme.hidden_weight_scale();
    const double os = scheme.output_weight_scale();
    FloatEvalNet f = FloatEvalNet::zeros(q.half_width, q.l2_width, q.l3_width);
    f.input_weights = dequantize_all(q.input_weights, a);
    f.input_biases = dequantize_all(q.input_biases, a);
    f.l2.weights = dequantize_all(q.l2_weights, hs);
    f.l2.biases = dequantize_all(q.l2_biases, a * hs);
    f.l3.weights = dequantize_all(q.l3_weights, hs);
    f.l3.biases = dequantize_all(q.l3_biases, a * hs);
    f.out.weights = dequantize_all(q.output_weights, os);
    f.out.biases = {static_cast<double>(q.output_bias) / (a * os)};
    return f;
}

QuantErrorModel::QuantErrorModel(const FloatEvalNet& f, const QuantEvalNet& q)
    : float_(&f), quant_(&q), twin_(dequantize(q)) {
    if (f.half_width != q.half_width || f.l2.out_dim != q.l2_width || f.l3.out_dim != q.l3_width)
        throw std::invalid_argument("float and quantized nets have different shapes");
}

QuantErrorBound QuantErrorModel::bound(const ChessPosition& p) const {
    const FloatEvalNet& f = *float_;
    const QuantEvalNet& q = *quant_;
    const QuantScheme scheme{q.activation_shift, q.output_scale};
    const auto hw = static_cast<std::size_t>(f.half_width);
    const double a = kActivationMax;
    const double hs = scheme.hidden_weight_scale();
    const double scale = static_cast<double>(scheme.output_scale);
    constexpr double kUniformVar = 1.0 / 12.0;
    QuantErrorBound b;

    // Worst case: bias residual plus the residual of every active column; the clamp is applied
    // to the interval end points, so entries that stay saturated or dead contribute nothing.
    Trace t;
    forward_trace(f, p, t);
    std::vector<double> e0(2 * hw);
    for (std::size_t h = 0; h < 2; ++h) {
        for (std::size_t i = 0; i < hw; ++i) {
            double e = std::abs(static_cast<double>(q.input_biases[i]) - a * f.input_biases[i]);
            for (FeatureIndex fi : t.features[h]) {
                const std::size_t k = static_cast<std::size_t>(fi.value) * hw + i;
                e += std::abs(static_cast<double>(q.input_weights[k]) - a * f.input_weights[k]);
            }
            const double z = a * t.acc[h * hw + i];
            e0[h * hw + i] = clamp_spread(z, z - e, z + e);
        }
    }
    auto pre = [](const nn::DenseLayer& l, std::span<const double> x) {
        std::vector<double> out(static_cast<std::size_t>(l.out_dim));
        for (std::size_t o = 0; o < out.size(); ++o) {
            double s = l.biases[o];
            for (std::size_t i = 0; i < x.size(); ++i) s += l.weights[o * x.size() + i] * x[i];
            out[o] = s;
        }
        return out;
    };
    const auto e2 = clipped_error(pre(f.l2, t.h0), dense_error(f.l2, q.l2_weights, q.l2_biases, t.h0, e0, hs), hs);
    const auto e3 = clipped_error(pre(f.l3, t.h2), dense_error(f.l3, q.l3_weights, q.l3_biases, t.h2, e2, hs), hs);
    const std::vector<std::int32_t> out_bias{q.output_bias};
    const double raw = dense_error(f.out, q.output_weights, out_bias, t.h3, e3, scheme.output_weight_scale())[0];
    // raw units are centipawns * output_scale; truncating division adds < 1 cp.
    b.worst_case = raw / scale + 1.0;

    // Weight rounding is fixed and known: its effect is exactly the dequantized twin's deviation.
    Trace tw;
    forward_trace(twin_, p, tw);
    b.weight_offset = (tw.y - t.y) * kTargetScaleCp;

    // Arithmetic rounding on top of the twin. The accumulator is exact (shift 0); every flooring
    // shift adds an independent error uniform on (-1, 0] to its unit. The output error is linear
    // in those errors, with coefficients found by running the integer weights backwards through
    // the units whose twin pre-activation lies in the clamp's linear part.
    auto linear = [&](const nn::DenseLayer& l, std::span<const double> x) {
        const auto z = pre(l, x);
        std::vector<bool> g(z.size());
        for (std::size_t o = 0; o < z.size(); ++o) g[o] = a * z[o] > 0.0 && a * z[o] < a;
        return g;
    };
    const auto g2 = linear(twin_.l2, tw.h0);
    const auto g3 = linear(twin_.l3, tw.h2);
    const std::size_t n2 = g2.size(), n3 = g3.size();
    std::vector<double> c3(n3, 0.0), c2(n2, 0.0);
    for (std::size_t o = 0; o < n3; ++o)
        if (g3[o]) c3[o] = q.output_weights[o];
    for (std::size_t o = 0; o < n3; ++o)
        for (std::size_t i = 0; i < n2; ++i)
            if (g2[i]) c2[i] += c3[o] * q.l3_weights[o * n2 + i] / hs;
    double sum = 0.0, sum_sq = 0.0;
    for (double c : c2) sum += c, sum_sq += c * c;
    for (double c : c3) sum += c, sum_sq += c * c;
    // Truncation toward zero pulls the result toward zero by about half a centipawn.
    const double truncation = tw.y > 0.0 ? -0.5 : tw.y < 0.0 ? 0.5 : 0.0;
    b.arithmetic_mean = -0.5 * sum / scale + truncation;
    b.arithmetic_sigma = std::sqrt(sum_sq * kUniformVar / (scale * scale) + kUniformVar);
    return b;
}

}  // namespace hexazero::eunn
