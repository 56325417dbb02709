#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hexazero/arena.hpp"
#include "hexazero/training.hpp"

using namespace hexazero;
using namespace hexazero::training;

namespace {

// Independent oracle: plain negamax-free recursion with a memo of its own.
int solve(const Board& b, std::map<Board, int>& memo) {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    const Outcome o = is_terminal(b);
    int v;
    if (o.terminal) {
        v = *o.winner == Color::White ? 1 : -1;
    } else {
        const bool white = b.turn() == Color::White;
        v = white ? -2 : 2;
        for (Move m : generate_moves(b)) {
            const int c = solve(apply_move(b, m), memo);
            v = white ? std::max(v, c) : std::min(v, c);
        }
    }
    memo[b] = v;
    return v;
}

std::size_t count_walk(const Board& b) {
    if (is_terminal(b).terminal) return 0;
    std::size_t n = 1;
    for (Move m : generate_moves(b)) n += count_walk(apply_move(b, m));
    return n;
}

bool is_legal(const Board& b, Move m) {
    const auto ms = generate_moves(b);
    return std::find(ms.begin(), ms.end(), m) != ms.end();
}

Board board_from_bits(const std::vector<double>& bits) {
    std::array<Cell, 9> cells{};
    for (int i = 0; i < 9; ++i) {
        cells[static_cast<std::size_t>(i)] = bits[static_cast<std::size_t>(i)] != 0.0       ? Cell::White
                                             : bits[static_cast<std::size_t>(9 + i)] != 0.0 ? Cell::Black
                                                                                             : Cell::Empty;
    }
    return Board(cells, bits[18] != 0.0 ? Color::White : Color::Black);
}

}  // namespace

TEST_CASE("state enumeration") {
    const auto states = enumerate_states();
    CHECK(states.size() == 135);
    CHECK(states.count(starting_position()) == 1);
    std::size_t non_terminal = 0;
    for (const Board& b : states) non_terminal += is_terminal(b).terminal ? 0 : 1;
    CHECK(non_terminal == 70);
}

TEST_CASE("supervised dataset") {
    std::map<Board, int> memo;
    const Dataset ds = generate_supervised_dataset();
    CHECK(ds.size() == 70);
    CHECK(generate_supervised_dataset(true).size() == count_walk(starting_position()));
    CHECK(generate_supervised_dataset(true).size() == 118);

    std::set<Board> seen;
    for (const auto& s : ds) {
        REQUIRE(s.input.size() == static_cast<std::size_t>(kInputSize));
        const Board b = board_from_bits(s.input);
        CHECK(seen.insert(b).second);
        CHECK_FALSE(is_terminal(b).terminal);
        CHECK(std::accumulate(s.target_policy.begin(), s.target_policy.end(), 0.0) == 1.0);
        const auto hot = std::find(s.target_policy.begin(), s.target_policy.end(), 1.0) - s.target_policy.begin();
        const Move m = move_from_output_index(static_cast<int>(hot));
        CHECK(is_legal(b, m));
        const int value = solve(b, memo);
        CHECK(s.target_value == static_cast<double>(value));
        // The labelled move keeps the exhaustive value.
        CHECK(solve(apply_move(b, m), memo) == value);
    }
    // Start position: Black wins under perfect play.
    CHECK(solve(starting_position(), memo) == -1);
    CHECK(oracle_move(starting_position()) == Move{6, 3});
}

TEST_CASE("dataset files round trip") {
    const Dataset ds = generate_supervised_dataset(true);
    std::stringstream ss;
    write_dataset(ss, ds);
    const Dataset back = read_dataset(ss);
    REQUIRE(back.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back[i].input == ds[i].input);
        CHECK(back[i].target_policy == ds[i].target_policy);
        CHECK(back[i].target_value == ds[i].target_value);
    }

    // Non-trivial doubles survive the text format exactly.
    Dataset odd(1, ds.front());
    odd[0].target_policy.assign(kPolicySize, 1.0 / 3.0);
    std::stringstream s2;
    write_dataset(s2, odd);
    CHECK(read_dataset(s2)[0].target_policy == odd[0].target_policy);

    std::istringstream bad("0101|1,0|1\n");
    CHECK_THROWS(read_dataset(bad));
    std::istringstream bits("00000011111100000011x|" + std::string(55, ',') + "|1\n");
    CHECK_THROWS(read_dataset(bits));

    const auto dir = std::filesystem::temp_directory_path() / "hexazero_ds_test";
    std::filesystem::create_directories(dir);
    save_dataset(ds, dir / "d.txt");
    CHECK(load_dataset(dir / "d.txt").size() == ds.size());
    std::filesystem::remove_all(dir);
    CHECK_THROWS(load_dataset(dir / "none.txt"));
}

TEST_CASE("supervised training drives loss down") {
    nn::TwoHeadNet net(42);
    const Dataset ds = generate_supervised_dataset();
    SupervisedConfig cfg;
    cfg.epochs = 60;
    const auto history = train_supervised(net, ds, cfg);
    CHECK(history.size() == 60);
    CHECK(history.back() < history.front());
    nn::TwoHeadNet empty_net(1);
    CHECK_THROWS_AS(train_supervised(empty_net, {}, cfg), std::invalid_argument);
}

TEST_CASE("self-play game records") {
    const nn::TwoHeadNet net(3);
    puct::Config cfg;
    cfg.simulations = 20;
    Rng rng(11);
    for (int g = 0; g < 5; ++g) {
        const GameRecord rec = self_play_game(net, cfg, rng);
        REQUIRE(rec.positions.size() == rec.moves.size());
        REQUIRE(rec.samples.size() == rec.positions.size());
        CHECK(rec.positions.front() == starting_position());
        Board b = starting_position();
        for (std::size_t i = 0; i < rec.moves.size(); ++i) {
            CHECK(rec.positions[i] == b);
            CHECK(is_legal(b, rec.moves[i]));
            const auto& s = rec.samples[i];
            const auto legal = generate_moves(b);
            double sum = 0;
            for (int k = 0; k < kPolicySize; ++k) {
                const double p = s.target_policy[static_cast<std::size_t>(k)];
                sum += p;
                const Move m = move_from_output_index(k);
                if (std::find(legal.begin(), legal.end(), m) == legal.end()) CHECK(p == 0.0);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            CHECK(s.target_value == (rec.winner == Color::White ? 1.0 : -1.0));
            b = apply_move(b, rec.moves[i]);
        }
        CHECK(is_terminal(b).winner == rec.winner);
    }
}

TEST_CASE("self-play loop bookkeeping") {
    SelfPlayConfig cfg;
    cfg.games_per_iteration = 2;
    cfg.epochs = 2;
    cfg.puct.simulations = 5;
    nn::TwoHeadNet net(9);
    std::vector<std::size_t> seen;
    const auto result = train_selfplay(net, cfg, [&](std::size_t it, const SelfPlayResult&) { seen.push_back(it); });
    CHECK(seen.size() == 11);
    REQUIRE(result.checkpoints.size() == 2);
    CHECK(result.checkpoints[0].iteration == 0);
    CHECK(result.checkpoints[1].iteration == 10);
    CHECK(result.checkpoints[1].net == net);
    CHECK(result.samples_per_iteration.size() == 11);
    for (std::size_t n : result.samples_per_iteration) CHECK(n >= 2 * 3);

    // Same seed, same result; jobs do not change the outcome.
    nn::TwoHeadNet a(9), b(9);
    SelfPlayConfig small = cfg;
    small.iterations = 2;
    train_selfplay(a, small);
    small.jobs = 3;
    train_selfplay(b, small);
    CHECK(a == b);

    SelfPlayConfig zero = cfg;
    zero.iterations = 0;
    CHECK_THROWS_AS(train_selfplay(net, zero), std::invalid_argument);
}

TEST_CASE("checkpoint paths") {
    CHECK(checkpoint_path("model.txt", 10) == std::filesystem::path("model_it10.txt"));
    CHECK(checkpoint_path("out/net", 0) == std::filesystem::path("out/net_it0"));
}
