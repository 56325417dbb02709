#include "hexazero/training.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hexazero/classic_search.hpp"
#include "parallel.hpp"

namespace hexazero::training {

namespace {

void collect_states(const Board& b, std::set<Board>& seen) {
    if (!seen.insert(b).second) return;
    if (is_terminal(b).terminal) return;
    for (Move m : generate_moves(b)) collect_states(apply_legal_move(b, m), seen);
}

const std::map<Board, int>& solved() {
    static const std::map<Board, int> table = solve_all();
    return table;
}

nn::TrainSample make_sample(const Board& b, Move best, int value) {
    nn::TrainSample s;
    const auto bits = to_network_input(b);
    s.input.assign(bits.begin(), bits.end());
    s.target_policy.assign(kPolicySize, 0.0);
    s.target_policy[static_cast<std::size_t>(output_index(best))] = 1.0;
    s.target_value = value > 0 ? 1.0 : -1.0;
    return s;
}

void visit_with_duplicates(const Board& b, Dataset& out) {
    if (is_terminal(b).terminal) return;
    out.push_back(make_sample(b, oracle_move(b), solved().at(b)));
    for (Move m : generate_moves(b)) visit_with_duplicates(apply_legal_move(b, m), out);
}

std::size_t sample_index(std::span<const double> probs, Rng& rng) {
    const double r = uniform_unit(rng);
    double acc = 0.0;
    std::size_t last = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        last = i;
        acc += probs[i];
        if (r < acc) return i;
    }
    if (last == probs.size()) throw std::logic_error("sampling from an all-zero distribution");
    return last;
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw std::runtime_error("dataset: bad number '" + std::string(text) + "'");
    return v;
}

}  // namespace

std::set<Board> enumerate_states() {
    std::set<Board> seen;
    collect_states(starting_position(), seen);
    return seen;
}

Move oracle_move(const Board& b) {
    const auto& table = solved();
    const int target = table.at(b);
    for (Move m : generate_moves(b))
        if (table.at(apply_legal_move(b, m)) == target) return m;
    throw std::logic_error("oracle_move: no move attains the solved value");
}

Dataset generate_supervised_dataset(bool path_duplicates) {
    Dataset ds;
    if (path_duplicates) {
        visit_with_duplicates(starting_position(), ds);
        return ds;
    }
    for (const Board& b : enumerate_states()) {
        if (is_terminal(b).terminal) continue;
        ds.push_back(make_sample(b, oracle_move(b), solved().at(b)));
    }
    return ds;
}

std::vector<double> train_supervised(nn::TwoHeadNet& net, const Dataset& ds, const SupervisedConfig& cfg) {
    if (ds.empty()) throw std::invalid_argument("train_supervised: empty dataset");
    nn::SgdConfig sgd{cfg.learning_rate, cfg.batch_size, cfg.epochs, cfg.seed};
    return net.fit(ds, sgd, cfg.reg_c);
}

GameRecord self_play_game(const nn::TwoHeadNet& net, const puct::Config& cfg, Rng& rng) {
    GameRecord rec;
    puct::CachedEvaluator cache(net);
    const puct::Evaluator eval = cache.as_function();
    Board b = starting_position();
    std::vector<std::vector<double>> policies;
    for (Outcome o = is_terminal(b); !o.terminal; o = is_terminal(b)) {
        puct::Config search_cfg = cfg;
        search_cfg.seed = rng();
        const auto probs = puct::search(b, eval, search_cfg);
        std::vector<double> policy(kPolicySize, 0.0);
        for (const auto& mp : probs) policy[static_cast<std::size_t>(output_index(mp.move))] = mp.pi;
        const Move next = move_from_output_index(static_cast<int>(sample_index(policy, rng)));
        rec.positions.push_back(b);
        rec.moves.push_back(next);
        policies.push_back(std::move(policy));
        b = apply_move(b, next);
    }
    rec.winner = *is_terminal(b).winner;
    const double label = rec.winner == Color::White ? 1.0 : -1.0;
    for (std::size_t i = 0; i < rec.positions.size(); ++i) {
        nn::TrainSample s;
        const auto bits = to_network_input(rec.positions[i]);
        s.input.assign(bits.begin(), bits.end());
        s.target_policy = std::move(policies[i]);
        s.target_value = label;
        rec.samples.push_back(std::move(s));
    }
    return rec;
}

SelfPlayResult train_selfplay(nn::TwoHeadNet& net, const SelfPlayConfig& cfg, const IterationCallback& on_iteration) {
    if (cfg.iterations == 0 || cfg.games_per_iteration == 0 || cfg.epochs == 0 || cfg.batch_size == 0 ||
        cfg.checkpoint_every == 0)
        throw std::invalid_argument("self-play counts must all be at least 1");
    SelfPlayResult result;
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        std::vector<GameRecord> games(cfg.games_per_iteration);
        const nn::TwoHeadNet& snapshot = net;
        detail::parallel_for(cfg.games_per_iteration, cfg.jobs, [&](std::size_t j) {
            Rng rng(derive_seed(cfg.seed, it * cfg.games_per_iteration + j));
            games[j] = self_play_game(snapshot, cfg.puct, rng);
        });
        Dataset pool;
        for (auto& g : games)
            for (auto& s : g.samples) pool.push_back(std::move(s));
        nn::SgdConfig sgd{cfg.learning_rate, cfg.batch_size, cfg.epochs, derive_seed(cfg.seed ^ 0x5EEDULL, it)};
        const auto history = net.fit(pool, sgd, cfg.reg_c);
        result.samples_per_iteration.push_back(pool.size());
        result.final_epoch_loss.push_back(history.back());
        if (it % cfg.checkpoint_every == 0) result.checkpoints.push_back({it, net});
        result.last_samples = std::move(pool);
        if (on_iteration) on_iteration(it, result);
    }
    return result;
}

void write_dataset(std::ostream& os, const Dataset& ds) {
    os << std::setprecision(17);
    for (const auto& s : ds) {
        if (s.input.size() != static_cast<std::size_t>(kInputSize) ||
            s.target_policy.size() != static_cast<std::size_t>(kPolicySize))
            throw std::invalid_argument("dataset sample has wrong dimensions");
        for (double x : s.input) os << (x != 0.0 ? '1' : '0');
        os << '|';
        for (std::size_t k = 0; k < s.target_policy.size(); ++k) os << (k ? "," : "") << s.target_policy[k];
        os << '|' << s.target_value << '\n';
    }
}

Dataset read_dataset(std::istream& is) {
    Dataset ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(lineno) + ")";
        const auto bar1 = line.find('|');
        const auto bar2 = line.find('|', bar1 == std::string::npos ? bar1 : bar1 + 1);
        if (bar1 != static_cast<std::size_t>(kInputSize) || bar2 == std::string::npos)
            throw std::runtime_error("dataset: malformed record" + where);
        nn::TrainSample s;
        for (std::size_t i = 0; i < bar1; ++i) {
            if (line[i] != '0' && line[i] != '1') throw std::runtime_error("dataset: bad input bit" + where);
            s.input.push_back(line[i] == '1' ? 1.0 : 0.0);
        }
        std::string_view policy(line.data() + bar1 + 1, bar2 - bar1 - 1);
        while (!policy.empty()) {
            const auto comma = policy.find(',');
            s.target_policy.push_back(parse_double(policy.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            policy.remove_prefix(comma + 1);
        }
        if (s.target_policy.size() != static_cast<std::size_t>(kPolicySize))
            throw std::runtime_error("dataset: policy needs 28 entries" + where);
        s.target_value = parse_double(std::string_view(line).substr(bar2 + 1));
        ds.push_back(std::move(s));
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_dataset(os, ds);
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open dataset '" + path.string() + "'");
    return read_dataset(is);
}

std::filesystem::path checkpoint_path(const std::filesystem::path& base, std::size_t iteration) {
    auto p = base;
    const auto ext = base.extension();
    p.replace_extension();
    p += "_it" + std::to_string(iteration);
    p += ext;
    return p;
}

}  // namespace hexazero::training
