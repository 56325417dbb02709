#include "doctest.h"

#include <algorithm>
#include <set>

#include "hexazero/game.hpp"

using namespace hexazero;

namespace {

std::vector<Move> moves(std::initializer_list<std::pair<int, int>> list) {
    std::vector<Move> out;
    for (auto [f, t] : list) out.push_back({static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(t)});
    return out;
}

void reach(const Board& b, std::set<Board>& seen) {
    if (!seen.insert(b).second || is_terminal(b).terminal) return;
    for (Move m : generate_moves(b)) reach(apply_move(b, m), seen);
}

std::set<Board> reachable() {
    std::set<Board> s;
    reach(starting_position(), s);
    return s;
}

}  // namespace

TEST_CASE("starting position layout") {
    const Board b = starting_position();
    for (int i = 0; i < 3; ++i) CHECK(b.at(i) == Cell::Black);
    for (int i = 3; i < 6; ++i) CHECK(b.at(i) == Cell::Empty);
    for (int i = 6; i < 9; ++i) CHECK(b.at(i) == Cell::White);
    CHECK(b.turn() == Color::White);
    CHECK_FALSE(is_terminal(b).terminal);
    CHECK(generate_moves(b) == moves({{6, 3}, {7, 4}, {8, 5}}));
}

TEST_CASE("black replies after b2") {
    const Board b = apply_move(starting_position(), Move{7, 4});
    // Generation order: ascending from-square, forward move before captures.
    CHECK(generate_moves(b) == moves({{0, 3}, {0, 4}, {2, 5}, {2, 4}}));
}

TEST_CASE("side with no pawns has no moves") {
    const Board b = parse_board("BBB ... ... w");
    CHECK(generate_moves(b).empty());
    const Outcome o = is_terminal(b);
    CHECK(o.terminal);
    CHECK(o.winner == Color::Black);
}

TEST_CASE("apply_move semantics") {
    const Board start = starting_position();
    const Board b = apply_move(start, Move{7, 4});
    CHECK(b.at(4) == Cell::White);
    CHECK(b.at(7) == Cell::Empty);
    CHECK(b.turn() == Color::Black);
    CHECK(start == starting_position());

    const Board c = apply_move(b, Move{0, 4});
    CHECK(c.at(4) == Cell::Black);
    CHECK(c.pawn_count(Color::White) == 2);
    CHECK_THROWS_AS(apply_move(start, Move{6, 0}), IllegalMove);
    CHECK_THROWS_AS(apply_move(start, Move{0, 3}), IllegalMove);
}

TEST_CASE("terminal detection") {
    const Outcome white_promoted = is_terminal(parse_board("W.. ... ... b"));
    CHECK(white_promoted.terminal);
    CHECK(white_promoted.winner == Color::White);
    const Outcome black_promoted = is_terminal(parse_board("... ... ..B w"));
    CHECK(black_promoted.winner == Color::Black);
    CHECK_FALSE(is_terminal(starting_position()).winner.has_value());

    // White to move, pawn blocked head-on with nothing to capture.
    const Board blocked = parse_board("... B.. W.. w");
    CHECK(generate_moves(blocked).empty());
    CHECK(is_terminal(blocked).winner == Color::Black);
}

TEST_CASE("network input encoding") {
    CHECK(bits_to_string(to_network_input(starting_position())) == "000000111111000000111");
    const Board fig = parse_board(".BB BW. W.W w");
    CHECK(bits_to_string(to_network_input(fig)) == "000010101011100000111");
    const Board black = Board(fig.cells(), Color::Black);
    CHECK(bits_to_string(to_network_input(black)) == "000010101011100000000");
}

TEST_CASE("output index table") {
    CHECK(output_index(Move{6, 3}) == 0);
    CHECK(output_index(Move{3, 0}) == 3);
    CHECK(output_index(Move{0, 4}) == 20);
    CHECK(output_index(Move{5, 7}) == 27);
    CHECK_THROWS_AS(output_index(Move{0, 1}), UnknownMove);
    CHECK_THROWS_AS(output_index(Move{6, 0}), UnknownMove);
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < kPolicySize; ++i) {
        const Move m = move_from_output_index(i);
        CHECK(output_index(m) == i);
        seen.insert({m.from, m.to});
    }
    CHECK(seen.size() == static_cast<std::size_t>(kPolicySize));
    CHECK_THROWS(move_from_output_index(28));
}

TEST_CASE("reachable-board properties") {
    const auto states = reachable();
    // Brute force under the stated rules; the often-quoted 188 does not arise from them.
    CHECK(states.size() == 135);
    for (const Board& b : states) {
        const auto ms = generate_moves(b);
        CHECK(ms.size() <= 7);
        std::set<int> idx;
        for (Move m : ms) idx.insert(output_index(m));
        CHECK(idx.size() == ms.size());

        const bool far_rank = b.at(0) == Cell::White || b.at(1) == Cell::White || b.at(2) == Cell::White ||
                              b.at(6) == Cell::Black || b.at(7) == Cell::Black || b.at(8) == Cell::Black;
        CHECK(is_terminal(b).terminal == (far_rank || ms.empty()));
        CHECK(is_terminal(b).terminal == is_terminal(b).winner.has_value());

        // Left-right reflection maps move sets onto each other.
        auto mirrored = generate_moves(mirror_files(b));
        std::vector<Move> reflected;
        for (Move m : ms) reflected.push_back(mirror_files(m));
        auto key = [](Move m) { return m.from * 16 + m.to; };
        auto by_key = [&](Move a, Move c) { return key(a) < key(c); };
        std::sort(mirrored.begin(), mirrored.end(), by_key);
        std::sort(reflected.begin(), reflected.end(), by_key);
        CHECK(mirrored == reflected);

        for (Move m : ms) {
            const Board next = apply_move(b, m);
            CHECK(next.pawn_count(Color::White) <= b.pawn_count(Color::White));
            CHECK(next.pawn_count(Color::Black) <= b.pawn_count(Color::Black));
        }
    }
}

TEST_CASE("text round trips") {
    CHECK(square_name(0) == "a3");
    CHECK(square_name(8) == "c1");
    CHECK(parse_square("b2") == 4);
    CHECK(parse_move("a1a2") == Move{6, 3});
    CHECK(move_to_string(Move{0, 4}) == "a3b2");
    CHECK_THROWS_AS(parse_move("a1"), ParseError);
    CHECK_THROWS_AS(parse_square("d4"), ParseError);
    const Board b = parse_board(render(starting_position()));
    CHECK(b == starting_position());
    CHECK_THROWS_AS(parse_board("BBB...WW"), ParseError);
    CHECK_THROWS_AS(parse_board("BBB...WWX"), ParseError);
}
