#include "hexazero/classic_search.hpp"

#include <algorithm>

namespace hexazero {

namespace {

std::optional<int> terminal_score(const Board& b) {
    const Outcome o = is_terminal(b);
    if (!o.terminal) return std::nullopt;
    return *o.winner == Color::White ? kWinScore : -kWinScore;
}

int solve(const Board& b, std::map<Board, int>& table) {
    if (auto it = table.find(b); it != table.end()) return it->second;
    int value;
    if (auto t = terminal_score(b)) {
        value = *t;
    } else {
        const bool maximize = b.turn() == Color::White;
        value = maximize ? kAlphaSentinel : kBetaSentinel;
        for (Move m : generate_moves(b)) {
            const int child = solve(apply_legal_move(b, m), table);
            value = maximize ? std::max(value, child) : std::min(value, child);
        }
    }
    table.emplace(b, value);
    return value;
}

}  // namespace

int minimax(const Board& b, int depth, bool maximize, NodeCounter& counter) {
    ++counter.visited;
    if (auto t = terminal_score(b)) return *t;
    if (depth <= 0) return 0;
    int best = maximize ? kAlphaSentinel : kBetaSentinel;
    for (Move m : generate_moves(b)) {
        const int v = minimax(apply_legal_move(b, m), depth - 1, !maximize, counter);
        best = maximize ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

int alpha_beta(const Board& b, int depth, int alpha, int beta, bool maximize, NodeCounter& counter) {
    ++counter.visited;
    if (auto t = terminal_score(b)) return *t;
    if (depth <= 0) return 0;
    if (maximize) {
        int best = kAlphaSentinel;
        for (Move m : generate_moves(b)) {
            best = std::max(best, alpha_beta(apply_legal_move(b, m), depth - 1, alpha, beta, false, counter));
            alpha = std::max(alpha, best);
            if (alpha >= beta) break;
        }
        return best;
    }
    int best = kBetaSentinel;
    for (Move m : generate_moves(b)) {
        best = std::min(best, alpha_beta(apply_legal_move(b, m), depth - 1, alpha, beta, true, counter));
        beta = std::min(beta, best);
        if (alpha >= beta) break;
    }
    return best;
}

SearchResult best_move(const Board& b, int depth, SearchAlgorithm algo) {
    if (is_terminal(b).terminal) throw TerminalPosition("best_move called on a terminal position");
    const bool maximize = b.turn() == Color::White;
    SearchResult result;
    result.value = maximize ? kAlphaSentinel : kBetaSentinel;
    NodeCounter counter;
    ++counter.visited;
    for (Move m : generate_moves(b)) {
        const Board child = apply_legal_move(b, m);
        const int v = algo == SearchAlgorithm::Minimax
                          ? minimax(child, depth - 1, !maximize, counter)
                          : alpha_beta(child, depth - 1, kAlphaSentinel, kBetaSentinel, !maximize, counter);
        if (maximize ? v > result.value : v < result.value) {
            result.value = v;
            result.best_move = m;
        }
    }
    result.nodes_visited = counter.visited;
    return result;
}

std::map<Board, int> solve_all() {
    std::map<Board, int> table;
    solve(starting_position(), table);
    return table;
}

}  // namespace hexazero
