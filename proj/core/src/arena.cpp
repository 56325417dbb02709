#include "hexazero/arena.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"

namespace hexazero::arena {

namespace {

Move random_move(const Board& b, Rng& rng) {
    const auto moves = generate_moves(b);
    return moves[uniform_index(rng, moves.size())];
}

std::string percent(double share) {
    return std::to_string(static_cast<long>(std::lround(share * 100.0))) + "%";
}

}  // namespace

Move policy_argmax(const nn::HeadOutput& out, const Board& b) {
    const auto moves = generate_moves(b);
    if (moves.empty()) throw std::logic_error("policy_argmax: no legal moves");
    int best_idx = kPolicySize;
    double best_p = -1.0;
    for (Move m : moves) {
        const int idx = output_index(m);
        const double p = out.policy.at(static_cast<std::size_t>(idx));
        if (!std::isfinite(p)) throw std::runtime_error("policy_argmax: network produced a non-finite policy");
        if (p > best_p || (p == best_p && idx < best_idx)) {
            best_p = p;
            best_idx = idx;
        }
    }
    return move_from_output_index(best_idx);
}

Color play_rand_vs_net(const nn::TwoHeadNet& net, Rng& rng) {
    Board b = starting_position();
    for (Outcome o = is_terminal(b);; o = is_terminal(b)) {
        if (o.terminal) return *o.winner;
        const Move m = b.turn() == Color::White ? random_move(b, rng)
                                                : policy_argmax(net.forward(to_network_input(b)), b);
        b = apply_legal_move(b, m);
    }
}

Color play_rand_vs_rand(Rng& rng) {
    Board b = starting_position();
    for (Outcome o = is_terminal(b);; o = is_terminal(b)) {
        if (o.terminal) return *o.winner;
        b = apply_legal_move(b, random_move(b, rng));
    }
}

Color play_rand_vs_puct(const nn::TwoHeadNet& net, const puct::Config& cfg, Rng& rng) {
    Board b = starting_position();
    puct::CachedEvaluator cache(net);
    const auto eval = cache.as_function();
    for (Outcome o = is_terminal(b);; o = is_terminal(b)) {
        if (o.terminal) return *o.winner;
        if (b.turn() == Color::White) {
            b = apply_legal_move(b, random_move(b, rng));
            continue;
        }
        puct::Config c = cfg;
        c.seed = rng();
        const auto probs = puct::search(b, eval, c);
        const puct::MoveProb* best = &probs.front();
        for (const auto& p : probs)
            if (p.N > best->N) best = &p;
        b = apply_legal_move(b, best->move);
    }
}

MatchReport run_match(MatchKind kind, const nn::TwoHeadNet* net, const MatchOptions& opts) {
    if (opts.games == 0) throw std::invalid_argument("run_match: games must be at least 1");
    if (kind != MatchKind::RandomVsRand && net == nullptr)
        throw std::invalid_argument("run_match: a network is required for this matchup");
    std::vector<Color> winners(opts.games, Color::White);
    detail::parallel_for(opts.games, opts.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(opts.seed, i));
        switch (kind) {
            case MatchKind::RandomVsNet: winners[i] = play_rand_vs_net(*net, rng); break;
            case MatchKind::RandomVsRand: winners[i] = play_rand_vs_rand(rng); break;
            case MatchKind::RandomVsPuct: winners[i] = play_rand_vs_puct(*net, opts.puct, rng); break;
        }
    });
    MatchReport r;
    r.games = opts.games;
    for (Color w : winners) (w == Color::White ? r.white_wins : r.black_wins)++;
    return r;
}

std::string format_table(const std::string& label, const MatchReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %10s %10s", label.c_str(), percent(r.white_share()).c_str(),
                  percent(r.black_share()).c_str());
    return buf;
}

std::string format_csv_row(const std::string& label, const MatchReport& r) {
    return label + "," + std::to_string(r.games) + "," + std::to_string(r.white_wins) + "," +
           std::to_string(r.black_wins);
}

}  // namespace hexazero::arena
