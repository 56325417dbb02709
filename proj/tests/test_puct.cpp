#include "doctest.h"

#include <cmath>
#include <numeric>

#include "hexazero/puct.hpp"

using namespace hexazero;
using namespace hexazero::puct;

namespace {

nn::HeadOutput uniform(const Board&) {
    return {std::vector<double>(kPolicySize, 1.0 / kPolicySize), 0.0};
}

}  // namespace

TEST_CASE("puct_u values") {
    CHECK(std::abs(puct_u(0.6, 1, 2, 1.0) - 0.6 * std::sqrt(2.0) / 2) <= 1e-15);
    CHECK(puct_u(0.6, 1, 2, 1.0) == doctest::Approx(0.424).epsilon(1e-3));
    CHECK(puct_u(0.7, 1, 2, 1.0) == doctest::Approx(0.495).epsilon(1e-3));
    CHECK(puct_u(0.1, 3, 5, 1.0) == doctest::Approx(0.0559).epsilon(1e-3));
    CHECK(puct_u(0.5, 0, 0, 1.0) == 0.0);
    CHECK(puct_u(0.5, 0, 4, 2.0) == 2.0);
}

TEST_CASE("worked example: second-level selection") {
    // White to move at the parent so Q is taken as is.
    Tree t(starting_position());
    const EdgeId left = t.add_child(t.root(), Move{6, 3}, 0.6);
    const EdgeId right = t.add_child(t.root(), Move{7, 4}, 0.7);
    t.edge(left).N = 1;
    t.edge(left).W = t.edge(left).Q = 0.5;
    t.edge(right).N = 1;
    t.edge(right).W = t.edge(right).Q = 0.4;
    t.edge(t.root_edge()).N = 2;
    CHECK(std::abs(t.selection_score(left) - (0.5 + 0.6 * std::sqrt(2.0) / 2)) <= 1e-12);
    CHECK(std::abs(t.selection_score(right) - (0.4 + 0.7 * std::sqrt(2.0) / 2)) <= 1e-12);
    CHECK(t.selection_score(left) == doctest::Approx(0.92).epsilon(0.01));
    CHECK(t.selection_score(right) == doctest::Approx(0.89).epsilon(0.01));
    Rng rng(0);
    CHECK(t.select(t.root(), rng) == t.edge(left).child);
}

TEST_CASE("worked example: backpropagation") {
    Tree t(starting_position());
    const EdgeId top = t.add_child(t.root(), Move{7, 4}, 1.0);
    const EdgeId below = t.add_child(t.edge(top).child, Move{0, 3}, 1.0);
    t.edge(below).N = 1;
    t.edge(below).W = 0.5;
    t.edge(top).N = 2;
    t.edge(top).W = 0.8;
    t.backpropagate(0.7, below);
    CHECK(t.edge(below).N == 2);
    CHECK(std::abs(t.edge(below).W - 1.2) <= 1e-12);
    CHECK(std::abs(t.edge(below).Q - 0.6) <= 1e-12);
    CHECK(t.edge(top).N == 3);
    CHECK(std::abs(t.edge(top).W - 1.5) <= 1e-12);
    CHECK(std::abs(t.edge(top).Q - 0.5) <= 1e-12);
    CHECK(t.edge(t.root_edge()).N == 2);

    Tree fresh(starting_position());
    const EdgeId e = fresh.add_child(fresh.root(), Move{6, 3}, 1.0);
    fresh.backpropagate(-1.0, e);
    CHECK(fresh.edge(e).W == -1.0);
    CHECK(fresh.edge(e).N == 1);
    CHECK(fresh.edge(e).Q == -1.0);
}

TEST_CASE("selection negates Q for Black and follows priors on fresh edges") {
    const Board black = apply_move(starting_position(), Move{7, 4});
    Tree t(black);
    const EdgeId good = t.add_child(t.root(), Move{0, 3}, 0.5);
    const EdgeId bad = t.add_child(t.root(), Move{0, 4}, 0.5);
    for (EdgeId e : {good, bad}) t.edge(e).N = 1;
    t.edge(good).W = t.edge(good).Q = -0.9;
    t.edge(bad).W = t.edge(bad).Q = 0.9;
    Rng rng(1);
    CHECK(t.select(t.root(), rng) == t.edge(good).child);

    Tree f(starting_position());
    f.add_child(f.root(), Move{6, 3}, 0.2);
    const EdgeId hi = f.add_child(f.root(), Move{7, 4}, 0.5);
    f.add_child(f.root(), Move{8, 5}, 0.3);
    CHECK(f.select(f.root(), rng) == f.edge(hi).child);
}

TEST_CASE("exact ties break at random") {
    Tree t(starting_position());
    const EdgeId a = t.add_child(t.root(), Move{6, 3}, 1.0 / 3);
    const EdgeId b = t.add_child(t.root(), Move{7, 4}, 1.0 / 3);
    const EdgeId c = t.add_child(t.root(), Move{8, 5}, 1.0 / 3);
    Rng rng(3);
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 3000; ++i) {
        const NodeId n = t.select(t.root(), rng);
        counts[n == t.edge(a).child ? 0 : n == t.edge(b).child ? 1 : 2]++;
    }
    (void)c;
    for (int k : counts) CHECK(k > 800);
}

TEST_CASE("expand_and_evaluate") {
    Tree term(parse_board("... ... ..B w"));
    CHECK(term.expand_and_evaluate(term.root(), uniform) == -1.0);
    CHECK(term.node(term.root()).children.empty());
    Tree win(parse_board("W.. ... ... b"));
    CHECK(win.expand_and_evaluate(win.root(), uniform) == 1.0);

    const nn::TwoHeadNet zero = nn::TwoHeadNet::zeros();
    const Board b = apply_move(starting_position(), Move{7, 4});
    Tree t(b);
    CHECK(t.expand_and_evaluate(t.root(), network_evaluator(zero)) == 0.0);
    REQUIRE(t.node(t.root()).children.size() == 4);
    for (EdgeId e : t.node(t.root()).children) CHECK(t.edge(e).P == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(t.expand_and_evaluate(t.root(), uniform), std::logic_error);

    const nn::TwoHeadNet net(17);
    Tree u(b);
    const double v = u.expand_and_evaluate(u.root(), network_evaluator(net));
    CHECK(v == net.forward(to_network_input(b)).value);
    double sum = 0;
    for (EdgeId e : u.node(u.root()).children) {
        CHECK(u.edge(e).P >= 0.0);
        CHECK(u.edge(e).P <= 1.0);
        sum += u.edge(e).P;
        CHECK(u.node(u.edge(e).child).board == apply_move(b, u.edge(e).move));
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("visit probabilities") {
    const std::vector<std::uint64_t> v{3, 1};
    const auto pi = visit_probabilities(v, 1.0);
    CHECK(pi[0] == 0.75);
    CHECK(pi[1] == 0.25);
    const std::vector<std::uint64_t> scaled{9, 3};
    CHECK(visit_probabilities(scaled, 1.0) == pi);
    const std::vector<std::uint64_t> w{2, 5, 3};
    CHECK(visit_probabilities(w, 1e-4) == std::vector<double>{0, 1, 0});
    const auto sharp = visit_probabilities(w, 0.5);
    CHECK(sharp[1] == doctest::Approx(25.0 / 38));
    CHECK_THROWS(visit_probabilities(w, 0.0));
}

TEST_CASE("search bookkeeping") {
    const nn::TwoHeadNet net(5);
    for (std::uint64_t sims : {1u, 10u, 100u}) {
        Config cfg;
        cfg.simulations = sims;
        CachedEvaluator cache(net);
        Tree tree(starting_position(), cfg);
        Rng rng(cfg.seed);
        tree.expand_and_evaluate(tree.root(), cache.as_function());
        for (std::uint64_t i = 0; i < sims; ++i) {
            const NodeId leaf = tree.select(tree.root(), rng);
            tree.backpropagate(tree.expand_and_evaluate(leaf, cache.as_function()), tree.node(leaf).parent_edge);
        }
        std::uint64_t total = 0;
        for (EdgeId e : tree.node(tree.root()).children) total += tree.edge(e).N;
        CHECK(total == sims);
        // The sentinel root edge starts at 1 and is incremented by every simulation.
        CHECK(tree.edge(tree.root_edge()).N == sims + 1);
        for (EdgeId e = 1; e < tree.node_count(); ++e) {
            const Edge& ed = tree.edge(e);
            if (ed.N > 0) {
                CHECK(ed.Q == doctest::Approx(ed.W / static_cast<double>(ed.N)));
                CHECK(std::abs(ed.Q) <= 1.0);
            } else {
                CHECK(ed.Q == 0.0);
            }
        }

        const auto probs = search(starting_position(), net, cfg);
        double pi_sum = 0;
        std::uint64_t n_sum = 0;
        for (const auto& p : probs) {
            pi_sum += p.pi;
            n_sum += p.N;
        }
        CHECK(std::abs(pi_sum - 1.0) <= 1e-9);
        CHECK(n_sum == sims);
    }
    CHECK_THROWS(search(parse_board("W.. ... ... b"), net, Config{}));
}

TEST_CASE("search is deterministic") {
    const nn::TwoHeadNet net(8);
    Config cfg;
    cfg.seed = 99;
    const auto a = search(starting_position(), net, cfg);
    const auto b = search(starting_position(), net, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].move == b[i].move);
        CHECK(a[i].N == b[i].N);
        CHECK(a[i].Q == b[i].Q);
    }
}

TEST_CASE("finds promotion in one with a uniform network") {
    const nn::TwoHeadNet zero = nn::TwoHeadNet::zeros();
    for (const char* text : {"... ..B W.. b", "... B.. .WW b"}) {
        const Board b = parse_board(text);
        const auto probs = search(b, zero, Config{});
        const auto best = std::max_element(probs.begin(), probs.end(),
                                           [](const MoveProb& x, const MoveProb& y) { return x.pi < y.pi; });
        CHECK(is_terminal(apply_move(b, best->move)).winner == Color::Black);
    }
}
