#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hexazero/game.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::uct {

inline constexpr double kDefaultExploration = 1.4142;
inline constexpr double kDrawPayout = 0.5;

struct Config {
    double c = kDefaultExploration;
    std::uint64_t iterations = 1000;
    std::uint64_t seed = 42;
    // Propagate one root-relative payout to every node instead of crediting each
    // node from the viewpoint of the player who moved into it.
    bool book_faithful = false;
};

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct Node {
    Board board;
    double M = 0.0;
    std::uint64_t V = 0;
    std::vector<std::pair<Move, NodeId>> visited_children;
    std::vector<Move> unvisited_moves;
    NodeId parent = kNoNode;

    bool is_leaf() const { return !unvisited_moves.empty(); }
    bool is_terminal() const { return unvisited_moves.empty() && visited_children.empty(); }
};

struct MoveStats {
    Move move;
    double M = 0.0;
    std::uint64_t V = 0;
};

struct SearchReport {
    Move best;
    std::vector<MoveStats> stats;  // most visited first
};

// M + c * sqrt(ln(parent_V) / V). Throws std::domain_error when node_V is 0.
double uct_value(double node_M, std::uint64_t node_V, std::uint64_t parent_V, double c);

// M' = (M * V + E) / (V + 1).
double updated_mean(double M, std::uint64_t V, double payout);

class Tree {
public:
    explicit Tree(const Board& root, Config cfg = {});

    const Node& node(NodeId id) const { return nodes_.at(id); }
    Node& node(NodeId id) { return nodes_.at(id); }
    NodeId root() const { return 0; }
    std::size_t size() const { return nodes_.size(); }
    Color root_player() const { return root_player_; }
    const Config& config() const { return cfg_; }

    NodeId select(NodeId from = 0) const;
    // Throws std::logic_error on a terminal node.
    NodeId expand(NodeId id, Rng& rng);
    // Payout for the root player: 1 win, 0 loss, 0.5 draw.
    double simulate(NodeId id, Rng& rng) const;
    void backpropagate(NodeId id, double payout);

    void run_iteration(Rng& rng);

private:
    std::vector<Node> nodes_;
    Config cfg_;
    Color root_player_;

    NodeId add_node(const Board& b, NodeId parent);
};

double random_playout_payout(const Board& start, Color root_player, Rng& rng);

// Runs cfg.iterations of select / expand / simulate / backpropagate.
SearchReport search(const Board& b, const Config& cfg);

}  // namespace hexazero::uct
