#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hexazero/classic_search.hpp"
#include "hexazero/uct.hpp"

using namespace hexazero;
using namespace hexazero::uct;

TEST_CASE("uct_value formula") {
    CHECK(uct_value(0.5, 1, 1, 1.4142) == doctest::Approx(0.5).epsilon(1e-15));
    // ln(e) computed in floating point is 1 to within an ulp.
    CHECK(uct_value(0.0, 1, 3, 1.4142) == doctest::Approx(1.4142 * std::sqrt(std::log(3.0))));
    CHECK(uct_value(0.3, 4, 16, 1.4142) == doctest::Approx(0.3 + 1.4142 * std::sqrt(std::log(16.0) / 4.0)));
    CHECK(0.0 + 1.4142 * std::sqrt(std::log(std::numbers::e) / 1.0) == doctest::Approx(1.4142).epsilon(1e-15));
    CHECK_THROWS_AS(uct_value(0.5, 0, 4, 1.4142), std::domain_error);
}

TEST_CASE("mean update") {
    CHECK(updated_mean(0.4, 5, 0.1) == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(updated_mean(0.0, 0, 1.0) == 1.0);
    CHECK(updated_mean(updated_mean(0.0, 0, 1.0), 1, 0.0) == 0.5);
}

TEST_CASE("select descends by score and stops at leaves") {
    Tree t(starting_position());
    CHECK(t.select() == t.root());

    Rng rng(1);
    const NodeId a = t.expand(t.root(), rng);
    const NodeId b = t.expand(t.root(), rng);
    // Root still has an unvisited move: it is a leaf even with two children.
    CHECK(t.node(t.root()).is_leaf());
    CHECK(t.select() == t.root());

    const NodeId c = t.expand(t.root(), rng);
    CHECK_FALSE(t.node(t.root()).is_leaf());
    CHECK(t.node(t.root()).unvisited_moves.empty());
    CHECK(t.node(t.root()).visited_children.size() == 3);
    for (NodeId id : {a, b, c}) {
        t.node(id).V = 1;
        t.node(id).M = 0.2;
    }
    t.node(b).M = 0.9;
    t.node(t.root()).V = 3;
    CHECK(t.select() == b);
    const Node& child = t.node(b);
    CHECK(child.board == apply_move(starting_position(), t.node(t.root()).visited_children[1].first));
}

TEST_CASE("expand bookkeeping") {
    Tree t(starting_position());
    Rng rng(7);
    CHECK(t.node(0).unvisited_moves.size() == 3);
    t.expand(0, rng);
    CHECK(t.node(0).unvisited_moves.size() == 2);
    CHECK(t.node(0).visited_children.size() == 1);
    Tree terminal(parse_board("W.. ... ... b"));
    CHECK(terminal.node(0).is_terminal());
    CHECK_THROWS_AS(terminal.expand(0, rng), std::logic_error);
}

TEST_CASE("simulate payouts") {
    Rng rng(3);
    CHECK(random_playout_payout(parse_board("W.. ... ... b"), Color::White, rng) == 1.0);
    CHECK(random_playout_payout(parse_board("W.. ... ... b"), Color::Black, rng) == 0.0);
    for (int i = 0; i < 100; ++i) {
        const double p = random_playout_payout(starting_position(), Color::White, rng);
        CHECK((p == 0.0 || p == 1.0));
    }
}

TEST_CASE("backpropagation credits the mover") {
    Tree t(starting_position());
    Rng rng(5);
    const NodeId child = t.expand(0, rng);  // White moved into child
    t.backpropagate(child, 1.0);            // White (root player) won
    CHECK(t.node(child).M == 1.0);
    CHECK(t.node(child).V == 1);
    CHECK(t.node(0).V == 1);

    Config faithful;
    faithful.book_faithful = true;
    Tree u(starting_position(), faithful);
    const NodeId c1 = u.expand(0, rng);
    const NodeId c2 = u.expand(c1, rng);  // Black moved into c2
    u.backpropagate(c2, 1.0);
    CHECK(u.node(c2).M == 1.0);  // uniform payout, even at a Black-moved node
    Tree v(starting_position());
    const NodeId d1 = v.expand(0, rng);
    const NodeId d2 = v.expand(d1, rng);
    v.backpropagate(d2, 1.0);
    CHECK(v.node(d2).M == 0.0);
    CHECK(v.node(d1).M == 1.0);
}

TEST_CASE("search invariants") {
    Config cfg;
    cfg.iterations = 1;
    const auto one = search(starting_position(), cfg);
    int visited = 0;
    for (const auto& s : one.stats) visited += s.V == 1 ? 1 : 0;
    CHECK(visited == 1);
    CHECK(one.stats.size() == 3);

    cfg.iterations = 500;
    cfg.seed = 11;
    Tree t(starting_position(), cfg);
    Rng rng(cfg.seed);
    for (int i = 0; i < 500; ++i) t.run_iteration(rng);
    std::uint64_t sum = 0;
    for (const auto& [m, c] : t.node(0).visited_children) sum += t.node(c).V;
    CHECK(t.node(0).V == sum);
    CHECK(t.node(0).V == 500);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t.node(i).M >= 0.0);
        CHECK(t.node(i).M <= 1.0);
    }

    const auto a = search(starting_position(), cfg);
    const auto b = search(starting_position(), cfg);
    CHECK(a.best == b.best);
    REQUIRE(a.stats.size() == b.stats.size());
    for (std::size_t i = 0; i < a.stats.size(); ++i) {
        CHECK(a.stats[i].V == b.stats[i].V);
        CHECK(a.stats[i].M == b.stats[i].M);
    }
}

TEST_CASE("finds promotion in one") {
    Config cfg;
    cfg.iterations = 2000;
    // a2-a1 and a2xb1 both promote; the searcher must take one of them.
    const Board promo = parse_board("... B.. .WW b");
    const Move best = search(promo, cfg).best;
    CHECK(is_terminal(apply_move(promo, best)).winner == Color::Black);
    const Board lone = parse_board("... ..B W.. b");
    CHECK(search(lone, cfg).best == Move{5, 8});
}

TEST_CASE("principal line replies are oracle-winning") {
    const auto table = solve_all();
    Config cfg;
    cfg.iterations = 10000;
    for (Move first : generate_moves(starting_position())) {
        const Board b = apply_move(starting_position(), first);
        const Move reply = search(b, cfg).best;
        CHECK(table.at(apply_move(b, reply)) == -kWinScore);
    }
}
