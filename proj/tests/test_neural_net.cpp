#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hexazero/neural_net.hpp"

using namespace hexazero;
using namespace hexazero::nn;

namespace {

// Central differences against an analytic gradient, parameter by parameter.
template <typename LossFn>
void check_gradients(std::vector<DenseLayer>& layers, const Gradients& g, LossFn loss, double h = 1e-5) {
    REQUIRE(g.size() == layers.size());
    int checked = 0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        auto probe = [&](double& param, double analytic) {
            const double saved = param;
            param = saved + h;
            const double up = loss();
            param = saved - h;
            const double down = loss();
            param = saved;
            const double numeric = (up - down) / (2 * h);
            const double scale = std::max(std::abs(analytic), std::abs(numeric));
            CHECK(std::abs(analytic - numeric) <= 1e-4 * scale + 1e-9);
            ++checked;
        };
        for (std::size_t i = 0; i < layers[l].weights.size(); ++i) probe(layers[l].weights[i], g[l].dw[i]);
        for (std::size_t i = 0; i < layers[l].biases.size(); ++i) probe(layers[l].biases[i], g[l].db[i]);
    }
    CHECK(checked > 0);
}

std::vector<TrainSample> random_samples(Rng& rng, std::size_t n) {
    std::vector<TrainSample> out;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t s = 0; s < n; ++s) {
        TrainSample t;
        for (int i = 0; i < kInputSize; ++i) t.input.push_back(u(rng) < 0.4 ? 1.0 : 0.0);
        std::vector<double> logits(kPolicySize);
        for (auto& x : logits) x = 3.0 * u(rng);
        t.target_policy = softmax(logits);
        t.target_value = 2.0 * u(rng) - 1.0;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Sample> and_data() {
    return {{{0, 0}, {0}}, {{0, 1}, {0}}, {{1, 0}, {0}}, {{1, 1}, {1}}};
}

std::vector<Sample> xor_data() {
    return {{{0, 0}, {0}}, {{0, 1}, {1}}, {{1, 0}, {1}}, {{1, 1}, {0}}};
}

}  // namespace

TEST_CASE("activations") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(relu(-3.0) == 0.0);
    CHECK(relu(3.0) == 3.0);
    const auto s = softmax(std::vector<double>{0, 0, 0});
    for (double p : s) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto big = softmax(std::vector<double>{1000, 0, -1000});
    CHECK(std::isfinite(big[0]));
    CHECK(big[0] == doctest::Approx(1.0));
    for (double x : {-5.0, -0.5, 0.0, 0.3, 4.0}) {
        const double h = 1e-6;
        const double numeric = (sigmoid(x + h) - sigmoid(x - h)) / (2 * h);
        CHECK(std::abs(derivative_from_output(Activation::Sigmoid, sigmoid(x)) - sigmoid(x) * (1 - sigmoid(x))) <= 1e-12);
        CHECK(numeric == doctest::Approx(sigmoid(x) * (1 - sigmoid(x))).epsilon(1e-8));
    }
    CHECK(parse_activation(activation_name(Activation::Tanh)) == Activation::Tanh);
}

TEST_CASE("zero network outputs uniform policy and zero value") {
    const TwoHeadNet net = TwoHeadNet::zeros();
    const auto out = net.forward(to_network_input(starting_position()));
    REQUIRE(out.policy.size() == static_cast<std::size_t>(kPolicySize));
    for (double p : out.policy) CHECK(p == doctest::Approx(1.0 / 28).epsilon(1e-15));
    CHECK(out.value == 0.0);
    CHECK_THROWS_AS(net.forward(std::vector<double>(20, 0.0)), DimensionMismatch);
}

TEST_CASE("AND perceptron from the hand-set weights") {
    DenseLayer p(2, 1, Activation::Linear);
    p.weights = {6, 6};
    p.biases = {-10};
    const double table[4][3] = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
    for (const auto& row : table) {
        double pre = 0;
        p.forward(std::vector<double>{row[0], row[1]}, std::span<double>(&pre, 1));
        CHECK((pre >= 0 ? 1.0 : 0.0) == row[2]);
        if (row[0] == 1 && row[1] == 1) CHECK(pre == 2.0);
    }
}

TEST_CASE("policy and value outputs are well formed") {
    const TwoHeadNet net(123);
    Rng rng(9);
    for (const auto& s : random_samples(rng, 50)) {
        const auto out = net.forward(s.input);
        const double sum = std::accumulate(out.policy.begin(), out.policy.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        for (double p : out.policy) {
            CHECK(p > 0.0);
            CHECK(p < 1.0);
        }
        CHECK(std::abs(out.value) <= 1.0);
    }
}

TEST_CASE("loss values") {
    TrainSample t;
    t.target_policy = {1, 0, 0};
    const std::vector<double> out{0.7, 0.1, 0.2};
    CHECK(sample_loss(out, t.target_value, t).policy == doctest::Approx(-std::log(0.7)).epsilon(1e-15));
    CHECK(sample_loss(out, 0.0, t).policy == doctest::Approx(0.357).epsilon(1e-3));

    // Two-sample negative log-likelihood with correct-label probabilities 0.7 and 0.3.
    TrainSample a, b;
    a.target_policy = {1, 0};
    b.target_policy = {0, 1};
    const std::vector<HeadOutput> outs{{{0.7, 0.3}, 0.0}, {{0.7, 0.3}, 0.0}};
    const std::vector<TrainSample> targets{a, b};
    CHECK(combined_loss(outs, targets, 0.0, 0.0) == doctest::Approx((-std::log(0.7) - std::log(0.3)) / 2));
    CHECK(combined_loss(outs, targets, 0.0, 0.0) == doctest::Approx(0.78).epsilon(0.01));

    TrainSample perfect;
    perfect.target_policy = {0, 1, 0};
    perfect.target_value = -1.0;
    CHECK(sample_loss(std::vector<double>{0, 1, 0}, -1.0, perfect).total == 0.0);
    // log(0) is clamped rather than infinite.
    CHECK(std::isfinite(sample_loss(std::vector<double>{1, 0, 0}, -1.0, perfect).total));
    CHECK(combined_loss(outs, targets, 0.5, 2.0) == doctest::Approx((-std::log(0.7) - std::log(0.3)) / 2 + 1.0));
}

TEST_CASE("worked single-perceptron gradient") {
    // The printed chain-rule factors: dE/dout = 0.95, dout/dnet ~ 0.048, dnet/dw1 taken as 2.
    const double product = 0.95 * 0.048 * 2;
    CHECK(std::abs(product - 0.0912) <= 1e-12);

    // The update with learning rate 10 goes through the library's SGD step.
    std::vector<DenseLayer> layers{DenseLayer(2, 1, Activation::Sigmoid)};
    layers[0].weights = {2.0, 3.0};
    layers[0].biases = {1.0};
    Gradients g = zero_gradients(layers);
    g[0].dw = {0.0912, -0.000297};
    sgd_step(layers, g, 10.0);
    CHECK(std::abs(layers[0].weights[0] - 1.088) <= 1e-12);
    CHECK(std::abs(layers[0].weights[1] - 3.00297) <= 1e-12);

    // What backpropagation actually yields for w = (1, 2, 3), x = (1, 0), r = 0.
    Mlp p({DenseLayer(2, 1, Activation::Sigmoid)});
    p.layers()[0].weights = {2.0, 3.0};
    p.layers()[0].biases = {1.0};
    const std::vector<Sample> batch{{{1, 0}, {0}}};
    const Gradients real = p.backward(batch, LossKind::HalfSquaredError);
    const double out = sigmoid(3.0);
    CHECK(std::abs(real[0].dw[0] - out * out * (1 - out) * 1.0) <= 1e-15);
    CHECK(real[0].dw[1] == 0.0);
    check_gradients(p.layers(), real, [&] { return p.loss(batch, LossKind::HalfSquaredError); });
}

TEST_CASE("two-head gradients match finite differences") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        TwoHeadNet net(seed, 2, 10);
        Rng rng(seed + 100);
        const auto batch = random_samples(rng, 4);
        for (double reg : {0.0, 0.01}) {
            const Gradients g = net.backward(batch, reg);
            check_gradients(net.layers(), g, [&] { return net.loss(batch, reg); });
        }
    }
}

TEST_CASE("mlp gradients match finite differences") {
    const std::vector<int> dims{10, 10, 10, 10, 3};
    for (std::uint64_t seed : {4u, 5u}) {
        Rng rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<Sample> batch(5);
        for (auto& s : batch) {
            for (int i = 0; i < 10; ++i) s.input.push_back(u(rng));
            s.target = {0.2, 0.5, 0.3};
        }
        Mlp tanh_net(dims, Activation::Tanh, Activation::Softmax, rng);
        check_gradients(tanh_net.layers(), tanh_net.backward(batch, LossKind::CrossEntropy),
                        [&] { return tanh_net.loss(batch, LossKind::CrossEntropy); });
        Mlp sig_net(dims, Activation::Sigmoid, Activation::Sigmoid, rng);
        check_gradients(sig_net.layers(), sig_net.backward(batch, LossKind::HalfSquaredError),
                        [&] { return sig_net.loss(batch, LossKind::HalfSquaredError); });
    }
}

TEST_CASE("zero loss gives zero gradient") {
    TwoHeadNet net = TwoHeadNet::zeros(2, 8);
    TrainSample s;
    s.input.assign(kInputSize, 0.0);
    s.target_policy.assign(kPolicySize, 1.0 / kPolicySize);
    s.target_value = 0.0;
    const std::vector<TrainSample> batch{s};
    // Uniform-target cross-entropy has its minimum at the uniform output, value at 0.
    for (const auto& lg : net.backward(batch)) {
        for (double d : lg.dw) CHECK(d == doctest::Approx(0.0));
        for (double d : lg.db) CHECK(d == doctest::Approx(0.0));
    }
    const auto before = net;
    net.sgd_step(zero_gradients(net.layers()), 0.5);
    CHECK(net == before);
}

TEST_CASE("sgd steps are applied per step") {
    std::vector<DenseLayer> a{DenseLayer(1, 1, Activation::Linear)}, b = a;
    Gradients g = zero_gradients(a);
    g[0].dw = {1.0};
    sgd_step(a, g, 0.1);
    sgd_step(b, g, 0.05);
    sgd_step(b, g, 0.05);
    CHECK(a[0].weights[0] == doctest::Approx(b[0].weights[0]));
    sgd_step(b, g, 0.05);
    CHECK(a[0].weights[0] != doctest::Approx(b[0].weights[0]));
}

TEST_CASE("fit learns AND, fails XOR without a hidden layer, learns XOR with one") {
    Rng rng(42);
    const std::vector<int> single{2, 1};
    Mlp and_net(single, Activation::Sigmoid, Activation::Sigmoid, rng);
    const auto history = and_net.fit(and_data(), {2.0, 4, 4000, 1}, LossKind::HalfSquaredError);
    CHECK(history.back() < history.front());
    for (const auto& s : and_data()) CHECK(std::abs(and_net.forward(s.input)[0] - s.target[0]) < 0.15);

    Mlp xor_single(single, Activation::Sigmoid, Activation::Sigmoid, rng);
    const auto xh = xor_single.fit(xor_data(), {2.0, 4, 4000, 1}, LossKind::HalfSquaredError);
    CHECK(*std::min_element(xh.begin(), xh.end()) >= 0.06);

    const std::vector<int> hidden{2, 8, 1};
    Mlp xor_net(hidden, Activation::Sigmoid, Activation::Sigmoid, rng);
    xor_net.fit(xor_data(), {2.0, 4, 10000, 1}, LossKind::HalfSquaredError);
    for (const auto& s : xor_data()) CHECK(std::abs(xor_net.forward(s.input)[0] - s.target[0]) < 0.15);
}

TEST_CASE("deterministic initialization and training") {
    CHECK(TwoHeadNet(7) == TwoHeadNet(7));
    CHECK_FALSE(TwoHeadNet(7) == TwoHeadNet(8));
    Rng rng(3);
    const auto data = random_samples(rng, 20);
    TwoHeadNet a(5, 2, 16), b(5, 2, 16);
    const SgdConfig cfg{0.05, 4, 3, 77};
    CHECK(a.fit(data, cfg) == b.fit(data, cfg));
    CHECK(a == b);
}

TEST_CASE("model files") {
    const auto dir = std::filesystem::temp_directory_path() / "hexazero_nn_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "net.txt";
    const TwoHeadNet net(31);
    save(net, path);
    const TwoHeadNet back = load(path);
    CHECK(back == net);
    Rng rng(1);
    for (const auto& s : random_samples(rng, 100)) {
        const auto x = net.forward(s.input);
        const auto y = back.forward(s.input);
        CHECK(x.policy == y.policy);
        CHECK(x.value == y.value);
    }

    std::ifstream in(path);
    std::stringstream all;
    all << in.rdbuf();
    const std::string text = all.str();
    CHECK(text.rfind("HZNET 1\n", 0) == 0);

    std::istringstream truncated(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_layers(truncated), ModelFormatError);
    std::istringstream wrong_magic("HZNET 2\n" + text.substr(8));
    CHECK_THROWS_AS(read_layers(wrong_magic), ModelVersionError);
    std::istringstream garbage("hello");
    CHECK_THROWS_AS(read_layers(garbage), ModelVersionError);
    CHECK_THROWS(load(dir / "missing.txt"));

    Rng mrng(2);
    const std::vector<int> dims{3, 4, 2};
    const Mlp mlp(dims, Activation::Relu, Activation::Sigmoid, mrng);
    save(mlp, dir / "mlp.txt");
    CHECK(load_mlp(dir / "mlp.txt").layers() == mlp.layers());
    std::filesystem::remove_all(dir);
}
