#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "hexazero/game.hpp"

namespace hexazero {

inline constexpr int kWinScore = 10000;
inline constexpr int kAlphaSentinel = -99999;
inline constexpr int kBetaSentinel = 99999;
// Hexapawn games end within 6 plies of the start; anything at or above this is exhaustive.
inline constexpr int kExhaustiveDepth = 30;

struct NodeCounter {
    std::uint64_t visited = 0;
};

struct SearchResult {
    std::optional<Move> best_move;
    int value = 0;
    std::uint64_t nodes_visited = 0;
};

class TerminalPosition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// +10000 for a White win, -10000 for a Black win, 0 at depth 0 on a non-terminal board.
int minimax(const Board& b, int depth, bool maximize, NodeCounter& counter);

int alpha_beta(const Board& b, int depth, int alpha, int beta, bool maximize, NodeCounter& counter);

enum class SearchAlgorithm { Minimax, AlphaBeta };

// Throws TerminalPosition. Ties go to the first best move in generation order.
SearchResult best_move(const Board& b, int depth = kExhaustiveDepth,
                       SearchAlgorithm algo = SearchAlgorithm::Minimax);

// Exhaustive value of every state reachable from the start, each evaluated once.
std::map<Board, int> solve_all();

}  // namespace hexazero
