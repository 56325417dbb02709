#include "hexazero/neural_net.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace hexazero::nn {

namespace {

constexpr const char* kMagic = "HZNET";
constexpr int kFormatVersion = 1;

// Per-layer activations for one sample; outs[0] is the input.
struct Trace {
    std::vector<std::vector<double>> outs;

    void reset(std::span<const DenseLayer> layers) {
        outs.resize(layers.size() + 1);
        if (!layers.empty()) outs[0].resize(static_cast<std::size_t>(layers[0].in_dim));
        for (std::size_t i = 0; i < layers.size(); ++i)
            outs[i + 1].resize(static_cast<std::size_t>(layers[i].out_dim));
    }
};

void run_stack(std::span<const DenseLayer> layers, std::span<const double> x, Trace& t) {
    t.reset(layers);
    std::copy(x.begin(), x.end(), t.outs[0].begin());
    for (std::size_t i = 0; i < layers.size(); ++i) layers[i].forward(t.outs[i], t.outs[i + 1]);
}

// delta holds dL/d(pre-activation) of the last layer on entry; on exit it holds dL/d(input).
void backprop_stack(std::span<const DenseLayer> layers, const Trace& t, std::vector<double>& delta,
                    std::span<LayerGrad> grads) {
    std::vector<double> next;
    for (std::size_t li = layers.size(); li-- > 0;) {
        const DenseLayer& L = layers[li];
        const auto& input = t.outs[li];
        LayerGrad& g = grads[li];
        for (int o = 0; o < L.out_dim; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d == 0.0) continue;
            g.db[static_cast<std::size_t>(o)] += d;
            double* dw = g.dw.data() + static_cast<std::size_t>(o) * L.in_dim;
            for (int i = 0; i < L.in_dim; ++i) dw[i] += d * input[static_cast<std::size_t>(i)];
        }
        next.assign(static_cast<std::size_t>(L.in_dim), 0.0);
        for (int o = 0; o < L.out_dim; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d == 0.0) continue;
            const double* w = L.weights.data() + static_cast<std::size_t>(o) * L.in_dim;
            for (int i = 0; i < L.in_dim; ++i) next[static_cast<std::size_t>(i)] += w[i] * d;
        }
        if (li > 0) {
            const Activation act = layers[li - 1].activation;
            for (std::size_t i = 0; i < next.size(); ++i) next[i] *= derivative_from_output(act, input[i]);
        }
        delta.swap(next);
    }
}

void add_regularization(std::span<const DenseLayer> layers, double reg_c, Gradients& grads) {
    if (reg_c == 0.0) return;
    for (std::size_t li = 0; li < layers.size(); ++li)
        for (std::size_t k = 0; k < layers[li].weights.size(); ++k)
            grads[li].dw[k] += 2.0 * reg_c * layers[li].weights[k];
}

void scale(Gradients& grads, double s) {
    for (auto& g : grads) {
        for (auto& v : g.dw) v *= s;
        for (auto& v : g.db) v *= s;
    }
}

template <typename SampleT, typename StepFn>
std::vector<double> run_epochs(std::span<const SampleT> data, const SgdConfig& cfg, StepFn&& step) {
    if (data.empty()) throw std::invalid_argument("fit: empty dataset");
    if (cfg.batch_size == 0) throw std::invalid_argument("fit: batch size must be positive");
    if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("fit: learning rate must be positive");
    Rng rng(cfg.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<SampleT> batch;
    std::vector<double> history;
    history.reserve(cfg.epochs);
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            batch.clear();
            for (std::size_t k = start; k < end; ++k) batch.push_back(data[order[k]]);
            loss_sum += step(std::span<const SampleT>(batch)) * static_cast<double>(batch.size());
        }
        history.push_back(loss_sum / static_cast<double>(data.size()));
    }
    return history;
}

}  // namespace

std::string_view activation_name(Activation a) {
    switch (a) {
        case Activation::Relu: return "relu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
        case Activation::Softmax: return "softmax";
        case Activation::Linear: return "linear";
        case Activation::ClippedRelu: return "clipped_relu";
    }
    return "linear";
}

Activation parse_activation(std::string_view name) {
    for (Activation a : {Activation::Relu, Activation::Sigmoid, Activation::Tanh, Activation::Softmax,
                         Activation::Linear, Activation::ClippedRelu})
        if (activation_name(a) == name) return a;
    throw ModelFormatError("unknown activation '" + std::string(name) + "'");
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double relu(double x) { return x > 0.0 ? x : 0.0; }
double clipped_relu(double x) { return std::clamp(x, 0.0, 1.0); }

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> out(logits.begin(), logits.end());
    activate(Activation::Softmax, out);
    return out;
}

void activate(Activation a, std::span<double> v) {
    switch (a) {
        case Activation::Relu: for (auto& x : v) x = relu(x); break;
        case Activation::Sigmoid: for (auto& x : v) x = sigmoid(x); break;
        case Activation::Tanh: for (auto& x : v) x = std::tanh(x); break;
        case Activation::ClippedRelu: for (auto& x : v) x = clipped_relu(x); break;
        case Activation::Linear: break;
        case Activation::Softmax: {
            if (v.empty()) break;
            const double mx = *std::max_element(v.begin(), v.end());
            double sum = 0.0;
            for (auto& x : v) {
                x = std::exp(x - mx);
                sum += x;
            }
            for (auto& x : v) x /= sum;
            break;
        }
    }
}

double derivative_from_output(Activation a, double out) {
    switch (a) {
        case Activation::Relu: return out > 0.0 ? 1.0 : 0.0;
        case Activation::Sigmoid: return out * (1.0 - out);
        case Activation::Tanh: return 1.0 - out * out;
        case Activation::ClippedRelu: return out > 0.0 && out < 1.0 ? 1.0 : 0.0;
        case Activation::Linear: return 1.0;
        case Activation::Softmax: break;
    }
    throw std::logic_error("softmax has no elementwise derivative");
}

DenseLayer::DenseLayer(int in, int out, Activation act)
    : in_dim(in), out_dim(out),
      weights(static_cast<std::size_t>(in) * static_cast<std::size_t>(out), 0.0),
      biases(static_cast<std::size_t>(out), 0.0), activation(act) {
    if (in <= 0 || out <= 0) throw DimensionMismatch("dense layer dimensions must be positive");
}

void DenseLayer::initialize(Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (auto& w : weights) w = dist(rng);
    for (auto& b : biases) b = dist(rng);
}

void DenseLayer::forward(std::span<const double> x, std::span<double> out) const {
    if (x.size() != static_cast<std::size_t>(in_dim) || out.size() != static_cast<std::size_t>(out_dim))
        throw DimensionMismatch("dense layer expects " + std::to_string(in_dim) + " inputs, got " +
                                std::to_string(x.size()));
    for (int o = 0; o < out_dim; ++o) {
        const double* w = weights.data() + static_cast<std::size_t>(o) * in_dim;
        double acc = biases[static_cast<std::size_t>(o)];
        for (int i = 0; i < in_dim; ++i) acc += w[i] * x[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(o)] = acc;
    }
    activate(activation, out);
}

Gradients zero_gradients(std::span<const DenseLayer> layers) {
    Gradients g(layers.size());
    for (std::size_t i = 0; i < layers.size(); ++i) {
        g[i].dw.assign(layers[i].weights.size(), 0.0);
        g[i].db.assign(layers[i].biases.size(), 0.0);
    }
    return g;
}

void sgd_step(std::span<DenseLayer> layers, const Gradients& grads, double lr) {
    if (!(lr > 0.0)) throw std::invalid_argument("sgd_step: learning rate must be positive");
    if (grads.size() != layers.size()) throw DimensionMismatch("gradient layer count mismatch");
    for (std::size_t li = 0; li < layers.size(); ++li) {
        auto& L = layers[li];
        const auto& g = grads[li];
        if (g.dw.size() != L.weights.size() || g.db.size() != L.biases.size())
            throw DimensionMismatch("gradient shape mismatch");
        for (std::size_t k = 0; k < L.weights.size(); ++k) L.weights[k] -= lr * g.dw[k];
        for (std::size_t k = 0; k < L.biases.size(); ++k) L.biases[k] -= lr * g.db[k];
    }
}

double weight_norm_sq(std::span<const DenseLayer> layers) {
    double s = 0.0;
    for (const auto& L : layers)
        for (double w : L.weights) s += w * w;
    return s;
}

// ---------------------------------------------------------------- Mlp

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw DimensionMismatch("mlp needs at least one layer");
    for (std::size_t i = 1; i < layers_.size(); ++i)
        if (layers_[i].in_dim != layers_[i - 1].out_dim) throw DimensionMismatch("mlp layer chain mismatch");
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i)
        if (layers_[i].activation == Activation::Softmax)
            throw DimensionMismatch("softmax is only allowed on the output layer");
}

Mlp::Mlp(std::span<const int> dims, Activation hidden_act, Activation out_act, Rng& rng) {
    if (dims.size() < 2) throw DimensionMismatch("mlp needs input and output dimensions");
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const bool last = i + 2 == dims.size();
        layers_.emplace_back(dims[i], dims[i + 1], last ? out_act : hidden_act);
        layers_.back().initialize(rng);
    }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
    Trace t;
    run_stack(layers_, x, t);
    return t.outs.back();
}

double Mlp::loss(std::span<const Sample> batch, LossKind kind) const {
    if (batch.empty()) throw std::invalid_argument("loss: empty batch");
    double total = 0.0;
    for (const auto& s : batch) {
        const auto out = forward(s.input);
        if (out.size() != s.target.size()) throw DimensionMismatch("target size mismatch");
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (kind == LossKind::HalfSquaredError) total += 0.5 * (out[k] - s.target[k]) * (out[k] - s.target[k]);
            else total -= s.target[k] * std::log(std::max(out[k], kLogEpsilon));
        }
    }
    return total / static_cast<double>(batch.size());
}

Gradients Mlp::backward(std::span<const Sample> batch, LossKind kind) const {
    if (batch.empty()) throw std::invalid_argument("backward: empty batch");
    const Activation out_act = layers_.back().activation;
    if (kind == LossKind::CrossEntropy && out_act != Activation::Softmax)
        throw std::invalid_argument("cross-entropy loss needs a softmax output layer");
    if (kind == LossKind::HalfSquaredError && out_act == Activation::Softmax)
        throw std::invalid_argument("squared-error loss is not supported on a softmax output");
    Gradients grads = zero_gradients(layers_);
    Trace t;
    std::vector<double> delta;
    for (const auto& s : batch) {
        run_stack(layers_, s.input, t);
        const auto& out = t.outs.back();
        if (out.size() != s.target.size()) throw DimensionMismatch("target size mismatch");
        delta.assign(out.size(), 0.0);
        if (kind == LossKind::CrossEntropy) {
            const double tsum = std::accumulate(s.target.begin(), s.target.end(), 0.0);
            for (std::size_t k = 0; k < out.size(); ++k) delta[k] = out[k] * tsum - s.target[k];
        } else {
            for (std::size_t k = 0; k < out.size(); ++k)
                delta[k] = (out[k] - s.target[k]) * derivative_from_output(out_act, out[k]);
        }
        backprop_stack(layers_, t, delta, grads);
    }
    scale(grads, 1.0 / static_cast<double>(batch.size()));
    return grads;
}

void Mlp::sgd_step(const Gradients& g, double lr) { nn::sgd_step(layers_, g, lr); }

std::vector<double> Mlp::fit(std::span<const Sample> data, const SgdConfig& cfg, LossKind kind) {
    return run_epochs<Sample>(data, cfg, [&](std::span<const Sample> batch) {
        const double l = loss(batch, kind);
        sgd_step(backward(batch, kind), cfg.learning_rate);
        return l;
    });
}

// ---------------------------------------------------------------- losses

LossTerms sample_loss(std::span<const double> policy_out, double value_out, const TrainSample& target) {
    if (policy_out.size() != target.target_policy.size()) throw DimensionMismatch("policy size mismatch");
    LossTerms t;
    t.value = (target.target_value - value_out) * (target.target_value - value_out);
    for (std::size_t k = 0; k < policy_out.size(); ++k)
        if (target.target_policy[k] != 0.0)
            t.policy -= target.target_policy[k] * std::log(std::max(policy_out[k], kLogEpsilon));
    t.total = t.value + t.policy;
    return t;
}

double combined_loss(std::span<const HeadOutput> outputs, std::span<const TrainSample> targets, double reg_c,
                     double weight_norm) {
    if (outputs.size() != targets.size() || outputs.empty()) throw DimensionMismatch("loss batch mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i)
        sum += sample_loss(outputs[i].policy, outputs[i].value, targets[i]).total;
    return sum / static_cast<double>(outputs.size()) + reg_c * weight_norm;
}

// ---------------------------------------------------------------- TwoHeadNet

TwoHeadNet::TwoHeadNet(std::uint64_t seed, int hidden_layers, int hidden_width) {
    Rng rng(seed);
    *this = zeros(hidden_layers, hidden_width);
    for (auto& L : layers_) L.initialize(rng);
}

TwoHeadNet::TwoHeadNet(std::vector<DenseLayer> trunk, DenseLayer policy_head, DenseLayer value_head)
    : layers_(std::move(trunk)) {
    layers_.push_back(std::move(policy_head));
    layers_.push_back(std::move(value_head));
    validate();
}

TwoHeadNet TwoHeadNet::zeros(int hidden_layers, int hidden_width) {
    if (hidden_layers < 1) throw DimensionMismatch("two-head net needs at least one trunk layer");
    std::vector<DenseLayer> trunk;
    int in = kInputSize;
    for (int i = 0; i < hidden_layers; ++i) {
        trunk.emplace_back(in, hidden_width, Activation::Relu);
        in = hidden_width;
    }
    return TwoHeadNet(std::move(trunk), DenseLayer(hidden_width, kPolicySize, Activation::Softmax),
                      DenseLayer(hidden_width, 1, Activation::Tanh));
}

void TwoHeadNet::validate() const {
    if (layers_.size() < 3) throw DimensionMismatch("two-head net needs trunk, policy and value layers");
    if (layers_.front().in_dim != kInputSize) throw DimensionMismatch("two-head net input must be 21 wide");
    for (std::size_t i = 1; i < trunk_size(); ++i)
        if (layers_[i].in_dim != layers_[i - 1].out_dim) throw DimensionMismatch("trunk layer chain mismatch");
    for (std::size_t i = 0; i < trunk_size(); ++i)
        if (layers_[i].activation == Activation::Softmax) throw DimensionMismatch("softmax inside trunk");
    const int trunk_out = layers_[trunk_size() - 1].out_dim;
    const auto& p = policy_head();
    const auto& v = value_head();
    if (p.in_dim != trunk_out || p.out_dim != kPolicySize || p.activation != Activation::Softmax)
        throw DimensionMismatch("policy head must be a softmax layer with 28 outputs");
    if (v.in_dim != trunk_out || v.out_dim != 1 || v.activation != Activation::Tanh)
        throw DimensionMismatch("value head must be a tanh layer with one output");
}

HeadOutput TwoHeadNet::forward(std::span<const double> input) const {
    if (input.size() != static_cast<std::size_t>(kInputSize))
        throw DimensionMismatch("two-head net expects 21 inputs, got " + std::to_string(input.size()));
    Trace t;
    run_stack(std::span<const DenseLayer>(layers_.data(), trunk_size()), input, t);
    const auto& h = t.outs.back();
    HeadOutput out;
    out.policy.resize(kPolicySize);
    policy_head().forward(h, out.policy);
    double v = 0.0;
    value_head().forward(h, std::span<double>(&v, 1));
    out.value = v;
    return out;
}

HeadOutput TwoHeadNet::forward(const NetInput& bits) const { return forward(to_input_vector(bits)); }

double TwoHeadNet::loss(std::span<const TrainSample> batch, double reg_c) const {
    if (batch.empty()) throw std::invalid_argument("loss: empty batch");
    std::vector<HeadOutput> outs;
    outs.reserve(batch.size());
    for (const auto& s : batch) outs.push_back(forward(s.input));
    return combined_loss(outs, batch, reg_c, reg_c == 0.0 ? 0.0 : weight_norm_sq(layers_));
}

Gradients TwoHeadNet::backward(std::span<const TrainSample> batch, double reg_c) const {
    return backward_with_loss(batch, reg_c, nullptr);
}

Gradients TwoHeadNet::backward_with_loss(std::span<const TrainSample> batch, double reg_c, double* loss) const {
    if (batch.empty()) throw std::invalid_argument("backward: empty batch");
    const std::size_t nt = trunk_size();
    const std::span<const DenseLayer> trunk(layers_.data(), nt);
    Gradients grads = zero_gradients(layers_);
    Trace t;
    double loss_sum = 0.0;
    std::vector<double> policy(kPolicySize), delta;
    for (const auto& s : batch) {
        if (s.input.size() != static_cast<std::size_t>(kInputSize) ||
            s.target_policy.size() != static_cast<std::size_t>(kPolicySize))
            throw DimensionMismatch("training sample has wrong dimensions");
        run_stack(trunk, s.input, t);
        const auto& h = t.outs.back();
        policy_head().forward(h, policy);
        double v = 0.0;
        value_head().forward(h, std::span<double>(&v, 1));

        if (loss) loss_sum += sample_loss(policy, v, s).total;
        const double tsum = std::accumulate(s.target_policy.begin(), s.target_policy.end(), 0.0);
        const double dv = -2.0 * (s.target_value - v) * (1.0 - v * v);
        const auto& P = policy_head();
        const auto& V = value_head();
        auto& gp = grads[nt];
        auto& gv = grads[nt + 1];
        delta.assign(h.size(), 0.0);
        for (int o = 0; o < kPolicySize; ++o) {
            const double d = policy[static_cast<std::size_t>(o)] * tsum - s.target_policy[static_cast<std::size_t>(o)];
            gp.db[static_cast<std::size_t>(o)] += d;
            double* dw = gp.dw.data() + static_cast<std::size_t>(o) * P.in_dim;
            const double* w = P.weights.data() + static_cast<std::size_t>(o) * P.in_dim;
            for (int i = 0; i < P.in_dim; ++i) {
                dw[i] += d * h[static_cast<std::size_t>(i)];
                delta[static_cast<std::size_t>(i)] += w[i] * d;
            }
        }
        gv.db[0] += dv;
        for (int i = 0; i < V.in_dim; ++i) {
            gv.dw[static_cast<std::size_t>(i)] += dv * h[static_cast<std::size_t>(i)];
            delta[static_cast<std::size_t>(i)] += V.weights[static_cast<std::size_t>(i)] * dv;
        }
        const Activation act = layers_[nt - 1].activation;
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= derivative_from_output(act, h[i]);
        backprop_stack(trunk, t, delta, std::span<LayerGrad>(grads.data(), nt));
    }
    scale(grads, 1.0 / static_cast<double>(batch.size()));
    add_regularization(layers_, reg_c, grads);
    if (loss)
        *loss = loss_sum / static_cast<double>(batch.size()) + (reg_c == 0.0 ? 0.0 : reg_c * weight_norm_sq(layers_));
    return grads;
}

void TwoHeadNet::sgd_step(const Gradients& g, double lr) { nn::sgd_step(layers_, g, lr); }

std::vector<double> TwoHeadNet::fit(std::span<const TrainSample> data, const SgdConfig& cfg, double reg_c) {
    return run_epochs<TrainSample>(data, cfg, [&](std::span<const TrainSample> batch) {
        double l = 0.0;
        sgd_step(backward_with_loss(batch, reg_c, &l), cfg.learning_rate);
        return l;
    });
}

std::vector<double> to_input_vector(const NetInput& bits) {
    return std::vector<double>(bits.begin(), bits.end());
}

// ---------------------------------------------------------------- persistence

void write_layers(std::ostream& os, std::span<const DenseLayer> layers) {
    os << kMagic << ' ' << kFormatVersion << '\n' << layers.size() << '\n';
    os << std::setprecision(17);
    for (const auto& L : layers) {
        os << "dense " << L.in_dim << ' ' << L.out_dim << ' ' << activation_name(L.activation) << '\n';
        for (int o = 0; o < L.out_dim; ++o) {
            for (int i = 0; i < L.in_dim; ++i) os << (i ? " " : "") << L.weight(o, i);
            os << '\n';
        }
        for (int o = 0; o < L.out_dim; ++o) os << (o ? " " : "") << L.biases[static_cast<std::size_t>(o)];
        os << '\n';
    }
}

std::vector<DenseLayer> read_layers(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic)) throw ModelFormatError("model file is empty or truncated");
    if (magic != kMagic) throw ModelVersionError("bad model magic '" + magic + "'");
    if (!(is >> version)) throw ModelFormatError("model file truncated in header");
    if (version != kFormatVersion) throw ModelVersionError("unsupported model version " + std::to_string(version));
    std::size_t count = 0;
    if (!(is >> count) || count == 0 || count > 1024) throw ModelFormatError("bad layer count");
    std::vector<DenseLayer> layers;
    layers.reserve(count);
    for (std::size_t l = 0; l < count; ++l) {
        std::string tag, act;
        int in = 0, out = 0;
        if (!(is >> tag >> in >> out >> act) || tag != "dense")
            throw ModelFormatError("corrupt layer header at layer " + std::to_string(l));
        if (in <= 0 || out <= 0 || in > (1 << 20) || out > (1 << 20))
            throw ModelFormatError("bad layer dimensions at layer " + std::to_string(l));
        DenseLayer L(in, out, parse_activation(act));
        for (auto& w : L.weights)
            if (!(is >> w)) throw ModelFormatError("model file truncated in weights");
        for (auto& b : L.biases)
            if (!(is >> b)) throw ModelFormatError("model file truncated in biases");
        layers.push_back(std::move(L));
    }
    std::string extra;
    if (is >> extra) throw ModelFormatError("trailing data after last layer");
    return layers;
}

namespace {

void write_file(const std::filesystem::path& path, std::span<const DenseLayer> layers) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_layers(os, layers);
    if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<DenseLayer> read_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open model '" + path.string() + "'");
    return read_layers(is);
}

}  // namespace

void save(const TwoHeadNet& net, const std::filesystem::path& path) { write_file(path, net.layers()); }

TwoHeadNet load(const std::filesystem::path& path) {
    auto layers = read_file(path);
    if (layers.size() < 3) throw ModelFormatError("two-head model needs at least three layers");
    DenseLayer value = std::move(layers.back());
    layers.pop_back();
    DenseLayer policy = std::move(layers.back());
    layers.pop_back();
    try {
        return TwoHeadNet(std::move(layers), std::move(policy), std::move(value));
    } catch (const DimensionMismatch& e) {
        throw ModelFormatError(std::string("model is not a two-head network: ") + e.what());
    }
}

void save(const Mlp& net, const std::filesystem::path& path) { write_file(path, net.layers()); }

Mlp load_mlp(const std::filesystem::path& path) {
    try {
        return Mlp(read_file(path));
    } catch (const DimensionMismatch& e) {
        throw ModelFormatError(std::string("malformed network: ") + e.what());
    }
}

}  // namespace hexazero::nn
