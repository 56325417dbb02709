#include "hexazero/puct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexazero::puct {

Evaluator network_evaluator(const nn::TwoHeadNet& net) {
    return [&net](const Board& b) { return net.forward(to_network_input(b)); };
}

const nn::HeadOutput& CachedEvaluator::operator()(const Board& b) {
    auto it = cache_.find(b);
    if (it == cache_.end()) it = cache_.emplace(b, net_->forward(to_network_input(b))).first;
    return it->second;
}

Evaluator CachedEvaluator::as_function() {
    return [this](const Board& b) { return (*this)(b); };
}

double puct_u(double P, std::uint64_t N_edge, std::uint64_t N_parent, double c_puct) {
    return c_puct * P * std::sqrt(static_cast<double>(N_parent)) / (1.0 + static_cast<double>(N_edge));
}

std::vector<double> visit_probabilities(std::span<const std::uint64_t> visits, double tau) {
    std::vector<double> pi(visits.size(), 0.0);
    if (visits.empty()) return pi;
    if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (tau < kArgmaxTau) {
        const auto best = std::max_element(visits.begin(), visits.end()) - visits.begin();
        pi[static_cast<std::size_t>(best)] = 1.0;
        return pi;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < visits.size(); ++i) {
        pi[i] = std::pow(static_cast<double>(visits[i]), 1.0 / tau);
        sum += pi[i];
    }
    if (sum == 0.0) {
        std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(pi.size()));
        return pi;
    }
    for (auto& p : pi) p /= sum;
    return pi;
}

Tree::Tree(const Board& root, Config cfg) : cfg_(cfg) {
    if (!(cfg_.c_puct > 0.0)) throw std::invalid_argument("c_puct must be positive");
    if (!(cfg_.tau > 0.0)) throw std::invalid_argument("tau must be positive");
    Edge root_edge;
    root_edge.N = 1;
    root_edge.child = 0;
    edges_.push_back(root_edge);
    nodes_.push_back(Node{root, 0, {}});
}

double Tree::selection_score(EdgeId id) const {
    const Edge& e = edges_[id];
    const Node& parent = nodes_[e.parent_node];
    const double q = parent.board.turn() == Color::Black ? -e.Q : e.Q;
    return q + puct_u(e.P, e.N, edges_[parent.parent_edge].N, cfg_.c_puct);
}

NodeId Tree::select(NodeId from, Rng& rng) const {
    NodeId id = from;
    std::vector<EdgeId> best;
    while (!nodes_[id].is_leaf()) {
        double best_score = -1e300;
        best.clear();
        for (EdgeId e : nodes_[id].children) {
            const double s = selection_score(e);
            if (s > best_score) {
                best_score = s;
                best.assign(1, e);
            } else if (s == best_score) {
                best.push_back(e);
            }
        }
        if (best.empty()) throw std::logic_error("could not identify child with best uct value");
        const EdgeId pick = best.size() == 1 ? best.front() : best[uniform_index(rng, best.size())];
        id = edges_[pick].child;
    }
    return id;
}

EdgeId Tree::add_child(NodeId parent, Move m, double P) {
    const EdgeId eid = edges_.size();
    const NodeId nid = nodes_.size();
    Edge e;
    e.move = m;
    e.P = P;
    e.parent_node = parent;
    e.child = nid;
    edges_.push_back(e);
    nodes_.push_back(Node{apply_legal_move(nodes_[parent].board, m), eid, {}});
    nodes_[parent].children.push_back(eid);
    return eid;
}

double Tree::expand_and_evaluate(NodeId id, const Evaluator& eval) {
    if (!nodes_.at(id).is_leaf()) throw std::logic_error("expand_and_evaluate on an expanded node");
    const Board board = nodes_[id].board;
    const Outcome o = is_terminal(board);
    if (o.terminal) {
        if (!o.winner) return 0.0;
        return *o.winner == Color::White ? 1.0 : -1.0;
    }
    const nn::HeadOutput out = eval(board);
    const auto moves = generate_moves(board);
    double prob_sum = 0.0;
    for (Move m : moves) {
        const double p = out.policy.at(static_cast<std::size_t>(output_index(m)));
        add_child(id, m, p);
        prob_sum += p;
    }
    for (EdgeId e : nodes_[id].children) {
        if (prob_sum > 0.0) edges_[e].P /= prob_sum;
        else edges_[e].P = 1.0 / static_cast<double>(moves.size());
    }
    return out.value;
}

void Tree::backpropagate(double v, EdgeId edge) {
    for (EdgeId e = edge; e != kNone;) {
        Edge& ed = edges_[e];
        ++ed.N;
        ed.W += v;
        ed.Q = ed.W / static_cast<double>(ed.N);
        e = ed.parent_node == kNone ? kNone : nodes_[ed.parent_node].parent_edge;
    }
}

std::vector<MoveProb> Tree::root_probabilities() const {
    const Node& r = nodes_[root()];
    std::vector<std::uint64_t> visits;
    visits.reserve(r.children.size());
    for (EdgeId e : r.children) visits.push_back(edges_[e].N);
    const auto pi = visit_probabilities(visits, cfg_.tau);
    std::vector<MoveProb> out;
    out.reserve(r.children.size());
    for (std::size_t i = 0; i < r.children.size(); ++i) {
        const Edge& e = edges_[r.children[i]];
        out.push_back({e.move, pi[i], e.N, e.Q});
    }
    return out;
}

std::vector<MoveProb> search(const Board& b, const Evaluator& eval, const Config& cfg) {
    if (is_terminal(b).terminal) throw std::invalid_argument("puct search on a terminal position");
    Tree tree(b, cfg);
    Rng rng(cfg.seed);
    tree.expand_and_evaluate(tree.root(), eval);
    for (std::uint64_t i = 0; i < cfg.simulations; ++i) {
        const NodeId leaf = tree.select(tree.root(), rng);
        const double v = tree.expand_and_evaluate(leaf, eval);
        tree.backpropagate(v, tree.node(leaf).parent_edge);
    }
    return tree.root_probabilities();
}

std::vector<MoveProb> search(const Board& b, const nn::TwoHeadNet& net, const Config& cfg) {
    CachedEvaluator cache(net);
    return search(b, cache.as_function(), cfg);
}

}  // namespace hexazero::puct
