#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hexazero/game.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::puct {

struct Config {
    double c_puct = 1.0;
    double tau = 1.0;
    std::uint64_t simulations = 100;
    std::uint64_t seed = 42;
};

// Below this temperature pi is the one-hot argmax of the visit counts.
inline constexpr double kArgmaxTau = 1e-3;

using NodeId = std::size_t;
using EdgeId = std::size_t;
inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// W and Q are White-positive.
struct Edge {
    Move move{};
    std::uint64_t N = 0;
    double W = 0.0;
    double Q = 0.0;
    double P = 0.0;
    NodeId parent_node = kNone;
    NodeId child = kNone;
};

struct Node {
    Board board;
    EdgeId parent_edge = kNone;
    std::vector<EdgeId> children;

    bool is_leaf() const { return children.empty(); }
};

struct MoveProb {
    Move move;
    double pi = 0.0;
    std::uint64_t N = 0;
    double Q = 0.0;
};

// Network query for one board: policy over the 28 outputs plus the value head.
using Evaluator = std::function<nn::HeadOutput(const Board&)>;

Evaluator network_evaluator(const nn::TwoHeadNet& net);

// Memoizes a frozen network per board. Not thread-safe; one per searching thread.
class CachedEvaluator {
public:
    explicit CachedEvaluator(const nn::TwoHeadNet& net) : net_(&net) {}
    const nn::HeadOutput& operator()(const Board& b);
    Evaluator as_function();

private:
    const nn::TwoHeadNet* net_;
    std::map<Board, nn::HeadOutput> cache_;
};

// c * P * sqrt(N_parent) / (1 + N_edge)
double puct_u(double P, std::uint64_t N_edge, std::uint64_t N_parent, double c_puct);

// pi_m = N_m^(1/tau) / sum_n N_n^(1/tau); argmax one-hot when tau < kArgmaxTau.
std::vector<double> visit_probabilities(std::span<const std::uint64_t> visits, double tau);

class Tree {
public:
    // The root hangs off a sentinel edge whose visit count starts at 1.
    explicit Tree(const Board& root, Config cfg = {});

    NodeId root() const { return 0; }
    EdgeId root_edge() const { return 0; }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }
    Edge& edge(EdgeId id) { return edges_.at(id); }
    std::size_t node_count() const { return nodes_.size(); }
    const Config& config() const { return cfg_; }

    // Parent-perspective score Q (negated when Black is to move at the parent) plus u.
    double selection_score(EdgeId id) const;
    // Descends to a leaf; exact ties are broken uniformly at random.
    NodeId select(NodeId from, Rng& rng) const;
    // Terminal leaf: +1 / -1 by winner, no children. Otherwise one network query creates
    // all children with priors masked to legal moves and renormalized; returns the value head.
    double expand_and_evaluate(NodeId id, const Evaluator& eval);
    // W += v, N += 1, Q = W / N from edge up to and including the root edge.
    void backpropagate(double v, EdgeId edge);

    // Test hook: attach a child edge with explicit statistics.
    EdgeId add_child(NodeId parent, Move m, double P);

    std::vector<MoveProb> root_probabilities() const;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    Config cfg_;
};

// Expands the root once, then runs cfg.simulations select / expand-and-evaluate / backpropagate rounds.
std::vector<MoveProb> search(const Board& b, const Evaluator& eval, const Config& cfg);
std::vector<MoveProb> search(const Board& b, const nn::TwoHeadNet& net, const Config& cfg);

}  // namespace hexazero::puct
