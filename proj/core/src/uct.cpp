#include "hexazero/uct.hpp"

#include <algorithm>
#include <cmath>

namespace hexazero::uct {

double uct_value(double node_M, std::uint64_t node_V, std::uint64_t parent_V, double c) {
    if (node_V == 0) throw std::domain_error("uct_value: node has no visits");
    if (parent_V == 0) throw std::domain_error("uct_value: parent has no visits");
    return node_M + c * std::sqrt(std::log(static_cast<double>(parent_V)) / static_cast<double>(node_V));
}

double updated_mean(double M, std::uint64_t V, double payout) {
    const double v = static_cast<double>(V);
    return (M * v + payout) / (v + 1.0);
}

Tree::Tree(const Board& root, Config cfg) : cfg_(cfg), root_player_(root.turn()) {
    if (!(cfg_.c > 0.0)) throw std::invalid_argument("uct: exploration constant must be positive");
    add_node(root, kNoNode);
}

NodeId Tree::add_node(const Board& b, NodeId parent) {
    Node n;
    n.board = b;
    n.parent = parent;
    if (!is_terminal(b).terminal) n.unvisited_moves = generate_moves(b);
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
}

NodeId Tree::select(NodeId from) const {
    NodeId id = from;
    for (;;) {
        const Node& n = nodes_[id];
        if (n.is_leaf() || n.is_terminal()) return id;
        NodeId best = kNoNode;
        double best_value = -1e300;
        for (const auto& [move, child] : n.visited_children) {
            const double v = uct_value(nodes_[child].M, nodes_[child].V, n.V, cfg_.c);
            if (v > best_value) {
                best_value = v;
                best = child;
            }
        }
        if (best == kNoNode) throw std::logic_error("could not identify child with best uct value");
        id = best;
    }
}

NodeId Tree::expand(NodeId id, Rng& rng) {
    Node& n = nodes_.at(id);
    if (n.unvisited_moves.empty()) throw std::logic_error("uct: cannot expand a node without unvisited moves");
    const std::size_t pick = uniform_index(rng, n.unvisited_moves.size());
    const Move m = n.unvisited_moves[pick];
    n.unvisited_moves.erase(n.unvisited_moves.begin() + static_cast<std::ptrdiff_t>(pick));
    const Board child_board = apply_legal_move(n.board, m);
    const NodeId child = add_node(child_board, id);
    nodes_[id].visited_children.emplace_back(m, child);
    return child;
}

double random_playout_payout(const Board& start, Color root_player, Rng& rng) {
    Board b = start;
    for (;;) {
        const Outcome o = is_terminal(b);
        if (o.terminal) {
            if (!o.winner) return kDrawPayout;
            return *o.winner == root_player ? 1.0 : 0.0;
        }
        const auto moves = generate_moves(b);
        b = apply_legal_move(b, moves[uniform_index(rng, moves.size())]);
    }
}

double Tree::simulate(NodeId id, Rng& rng) const {
    return random_playout_payout(nodes_.at(id).board, root_player_, rng);
}

void Tree::backpropagate(NodeId id, double payout) {
    for (NodeId cur = id; cur != kNoNode; cur = nodes_[cur].parent) {
        Node& n = nodes_[cur];
        double credited = payout;
        if (!cfg_.book_faithful) {
            const Color mover = opposite(n.board.turn());
            if (mover != root_player_) credited = 1.0 - payout;
        }
        n.M = updated_mean(n.M, n.V, credited);
        ++n.V;
    }
}

void Tree::run_iteration(Rng& rng) {
    NodeId id = select();
    if (!nodes_[id].is_terminal()) id = expand(id, rng);
    backpropagate(id, simulate(id, rng));
}

SearchReport search(const Board& b, const Config& cfg) {
    if (is_terminal(b).terminal) throw std::invalid_argument("uct search on a terminal position");
    Tree tree(b, cfg);
    Rng rng(cfg.seed);
    for (std::uint64_t i = 0; i < cfg.iterations; ++i) tree.run_iteration(rng);

    const Node& root = tree.node(tree.root());
    SearchReport report;
    for (const auto& [move, child] : root.visited_children)
        report.stats.push_back({move, tree.node(child).M, tree.node(child).V});
    for (Move m : root.unvisited_moves) report.stats.push_back({m, 0.0, 0});
    std::stable_sort(report.stats.begin(), report.stats.end(),
                     [](const MoveStats& a, const MoveStats& b) { return a.V > b.V; });
    report.best = report.stats.front().move;
    return report;
}

}  // namespace hexazero::uct
