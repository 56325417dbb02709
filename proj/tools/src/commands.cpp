#include "hexazero/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hexazero/arena.hpp"
#include "hexazero/classic_search.hpp"
#include "hexazero/eunn.hpp"
#include "hexazero/eunn_train.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/puct.hpp"
#include "hexazero/training.hpp"
#include "hexazero/uct.hpp"

namespace hexazero::cli {

namespace {

const std::string& require(const std::string& value, const char* flag, const char* command) {
    if (value.empty()) throw UsageError(std::string(command) + " requires " + flag);
    return value;
}

nn::TwoHeadNet load_model(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("model file not found: " + path);
    return nn::load(path);
}

Board position_or_start(const CliConfig& cfg) {
    return cfg.position.empty() ? starting_position() : parse_board(cfg.position);
}

puct::Config puct_config(const CliConfig& cfg) {
    puct::Config p;
    p.simulations = cfg.simulations.value_or(p.simulations);
    p.tau = cfg.tau.value_or(p.tau);
    p.c_puct = cfg.cpuct.value_or(p.c_puct);
    p.seed = cfg.seed;
    return p;
}

std::string value_text(int v) {
    if (v == kWinScore) return "White wins with best play";
    if (v == -kWinScore) return "Black wins with best play";
    return "undecided at this depth";
}

// Most visited root move; ties to the first in generation order.
Move most_visited(const std::vector<puct::MoveProb>& probs) {
    const auto it = std::max_element(probs.begin(), probs.end(),
                                     [](const puct::MoveProb& a, const puct::MoveProb& b) { return a.N < b.N; });
    return it->move;
}

}  // namespace

int cmd_solve(const CliConfig& cfg, std::ostream& out) {
    const Board b = position_or_start(cfg);
    out << render(b) << color_name(b.turn()) << " to move\n";
    if (const Outcome o = is_terminal(b); o.terminal) {
        out << "terminal: " << color_name(*o.winner) << " has won\n";
        return 0;
    }
    const SearchResult r = best_move(b);
    out << "value " << r.value << " (" << value_text(r.value) << ")\n";
    out << "best move " << move_to_string(*r.best_move) << "\n";
    return 0;
}

int cmd_gen_data(const CliConfig& cfg, std::ostream& out) {
    const std::string& path = require(cfg.out, "--out", "gen-data");
    const training::Dataset ds = training::generate_supervised_dataset(cfg.duplicates);
    training::save_dataset(ds, path);
    out << "wrote " << ds.size() << " samples to " << path << "\n";
    return 0;
}

int cmd_train_sl(const CliConfig& cfg, std::ostream& out) {
    const std::string& data_path = require(cfg.dataset, "--dataset", "train-sl");
    const std::string& out_path = require(cfg.out, "--out", "train-sl");
    if (!std::filesystem::exists(data_path)) throw UsageError("dataset file not found: " + data_path);
    const training::Dataset ds = training::load_dataset(data_path);

    training::SupervisedConfig sc;
    sc.epochs = cfg.epochs.value_or(sc.epochs);
    sc.batch_size = cfg.batch_size.value_or(sc.batch_size);
    sc.learning_rate = cfg.lr.value_or(sc.learning_rate);
    sc.seed = cfg.seed;
    nn::TwoHeadNet net(cfg.seed);
    const auto history = training::train_supervised(net, ds, sc);
    nn::save(net, out_path);
    out << std::setprecision(6) << "trained " << sc.epochs << " epochs on " << ds.size() << " samples, loss "
        << history.front() << " -> " << history.back() << "\n";
    out << "saved " << out_path << "\n";
    return 0;
}

int cmd_selfplay(const CliConfig& cfg, std::ostream& out) {
    const std::string& out_path = require(cfg.out, "--out", "selfplay");
    training::SelfPlayConfig sc;
    sc.iterations = cfg.iterations.value_or(sc.iterations);
    sc.games_per_iteration = cfg.games.value_or(sc.games_per_iteration);
    sc.epochs = cfg.epochs.value_or(sc.epochs);
    sc.batch_size = cfg.batch_size.value_or(sc.batch_size);
    sc.learning_rate = cfg.lr.value_or(sc.learning_rate);
    sc.puct = puct_config(cfg);
    sc.seed = cfg.seed;
    sc.jobs = cfg.jobs;

    nn::TwoHeadNet net(cfg.seed);
    out << std::setprecision(6);
    const auto result = training::train_selfplay(net, sc, [&](std::size_t it, const training::SelfPlayResult& r) {
        out << "iteration " << it << ": " << r.samples_per_iteration.back() << " samples, loss "
            << r.final_epoch_loss.back() << "\n";
    });
    for (const auto& c : result.checkpoints) {
        const auto path = training::checkpoint_path(out_path, c.iteration);
        nn::save(c.net, path);
        out << "checkpoint " << path.string() << "\n";
    }
    nn::save(net, out_path);
    out << "saved " << out_path << "\n";
    return 0;
}

int cmd_arena(const CliConfig& cfg, std::ostream& out) {
    arena::MatchOptions opts;
    opts.games = cfg.games.value_or(opts.games);
    opts.seed = cfg.seed;
    opts.jobs = cfg.jobs;
    opts.puct = puct_config(cfg);
    if (cfg.puct && cfg.model.empty()) throw UsageError("--puct needs --model");

    std::vector<std::pair<std::string, arena::MatchReport>> rows;
    rows.emplace_back("vs Random", arena::run_match(arena::MatchKind::RandomVsRand, nullptr, opts));
    const nn::TwoHeadNet untrained(cfg.seed);
    rows.emplace_back("vs Untrained Network", arena::run_match(arena::MatchKind::RandomVsNet, &untrained, opts));
    if (!cfg.model.empty()) {
        const nn::TwoHeadNet trained = load_model(cfg.model);
        if (cfg.puct)
            rows.emplace_back("vs Trained Network+PUCT", arena::run_match(arena::MatchKind::RandomVsPuct, &trained, opts));
        else
            rows.emplace_back("vs Trained Network", arena::run_match(arena::MatchKind::RandomVsNet, &trained, opts));
    }

    if (cfg.csv) {
        out << "opponent,games,white_wins,black_wins\n";
        for (const auto& [label, r] : rows) out << arena::format_csv_row(label, r) << "\n";
    } else {
        out << std::left << std::setw(24) << "White: random player" << std::right << std::setw(11) << "White"
            << std::setw(11) << "Black" << "\n";
        for (const auto& [label, r] : rows) out << arena::format_table(label, r) << "\n";
    }
    return 0;
}

int cmd_mcts(const CliConfig& cfg, std::ostream& out) {
    const Board b = position_or_start(cfg);
    if (is_terminal(b).terminal) throw UsageError("position is already decided");
    out << std::setprecision(4) << std::fixed;
    if (cfg.puct) {
        if (cfg.book_faithful) throw UsageError("--book-faithful applies to UCT, not --puct");
        const nn::TwoHeadNet net = cfg.model.empty() ? nn::TwoHeadNet(cfg.seed) : load_model(cfg.model);
        const puct::Config pc = puct_config(cfg);
        const auto probs = puct::search(b, net, pc);
        out << "move    N        Q       pi\n";
        for (const auto& p : probs)
            out << move_to_string(p.move) << std::setw(6) << p.N << std::setw(9) << p.Q << std::setw(9) << p.pi << "\n";
        out << "best " << move_to_string(most_visited(probs)) << "\n";
        return 0;
    }
    if (cfg.simulations) throw UsageError("UCT uses --iterations; --simulations is for --puct");
    uct::Config uc;
    uc.iterations = cfg.iterations.value_or(uc.iterations);
    uc.seed = cfg.seed;
    uc.book_faithful = cfg.book_faithful;
    const uct::SearchReport r = uct::search(b, uc);
    out << "move       V        M\n";
    for (const auto& s : r.stats) out << move_to_string(s.move) << std::setw(8) << s.V << std::setw(9) << s.M << "\n";
    out << "best " << move_to_string(r.best) << "\n";
    return 0;
}

SelfcheckResult eunn_selfcheck(const SelfcheckOptions& opts) {
    using namespace eunn;
    Rng init(opts.seed);
    const QuantEvalNet net = QuantEvalNet::random(init, opts.half_width);
    SelfcheckResult res;
    for (std::uint64_t s = 0; s < opts.sequences; ++s) {
        Rng rng(derive_seed(opts.seed, s));
        ChessPosition p = random_position(rng);
        Accumulator acc;
        refresh(acc, p, net);
        for (int ply = 0; ply < opts.plies; ++ply) {
            const auto moves = pseudo_legal_moves(p);
            if (moves.empty()) {
                p = make_null_move(p);
            } else {
                const ChessMove m = moves[uniform_index(rng, moves.size())];
                const FeatureDelta delta = move_delta(p, m);
                const ChessPosition after = make_move(p, m);
                update(acc, after, delta, net);
                p = after;
            }
            Accumulator fresh;
            refresh(fresh, p, net);
            ++res.plies_checked;
            if (acc.halves != fresh.halves || evaluate(p, acc, net) != evaluate(p, fresh, net))
                ++res.accumulator_mismatches;
        }
    }
    Rng mrng(derive_seed(opts.seed, opts.sequences));
    for (std::uint64_t i = 0; i < opts.mirror_positions; ++i) {
        const ChessPosition p = random_position(mrng);
        ++res.mirror_checked;
        if (evaluate(p, net) != evaluate(mirror(p), net)) ++res.mirror_mismatches;
    }
    return res;
}

int cmd_eunn_selfcheck(const CliConfig& cfg, std::ostream& out) {
    SelfcheckOptions opts;
    opts.seed = cfg.seed;
    opts.sequences = cfg.games.value_or(opts.sequences);
    opts.mirror_positions = cfg.samples.value_or(opts.mirror_positions);
    opts.half_width = cfg.width.value_or(opts.half_width);
    const SelfcheckResult r = eunn_selfcheck(opts);
    out << "incremental vs refresh: " << r.plies_checked << " plies over " << opts.sequences << " sequences, "
        << r.accumulator_mismatches << " mismatches\n";
    out << "mirror invariance: " << r.mirror_checked << " positions, " << r.mirror_mismatches << " mismatches\n";
    out << (r.ok() ? "PASS" : "FAIL") << "\n";
    return r.ok() ? 0 : 1;
}

EunnTrainResult eunn_train(const EunnTrainOptions& opts, const std::string& weights_out) {
    using namespace eunn;
    const auto all = material_dataset(opts.samples + opts.held_out, opts.seed);
    const std::span<const EvalSample> train(all.data(), opts.samples);
    const std::span<const EvalSample> test(all.data() + opts.samples, opts.held_out);

    Rng rng(opts.seed);
    FloatEvalNet f = FloatEvalNet::random(rng, opts.half_width);
    FloatTrainConfig tc;
    tc.epochs = opts.epochs;
    tc.batch_size = opts.batch_size;
    tc.learning_rate = opts.learning_rate;
    tc.seed = opts.seed;
    train_float(f, train, tc);

    EunnTrainResult res;
    res.held_out_mse = float_loss(f, test);
    double mean = 0.0;
    for (const auto& s : test) mean += scaled_target(s.centipawns);
    mean /= static_cast<double>(test.size());
    for (const auto& s : test) res.target_variance += std::pow(scaled_target(s.centipawns) - mean, 2);
    res.target_variance /= static_cast<double>(test.size());

    QuantizationReport report;
    const QuantEvalNet q = quantize(f, tc.scheme, &report);
    res.quantization_summary = report.summary();
    res.saturation_warning = report.saturation_warning();
    const QuantErrorModel model(f, q);
    Rng prng(derive_seed(opts.seed, 1));
    double total = 0.0;
    for (std::uint64_t i = 0; i < opts.quant_positions; ++i) {
        const ChessPosition p = random_position(prng);
        const double err = std::abs(static_cast<double>(evaluate(p, q)) - f.evaluate_cp(p));
        const QuantErrorBound b = model.bound(p);
        res.within_statistical += err <= b.statistical() ? 1 : 0;
        res.within_worst_case += err <= b.worst_case ? 1 : 0;
        total += err;
        res.max_abs_error_cp = std::max(res.max_abs_error_cp, err);
    }
    res.quant_positions = opts.quant_positions;
    res.mean_abs_error_cp = opts.quant_positions ? total / static_cast<double>(opts.quant_positions) : 0.0;
    if (!weights_out.empty()) save_weights(q, weights_out);
    return res;
}

int cmd_eunn_train(const CliConfig& cfg, std::ostream& out) {
    EunnTrainOptions opts;
    opts.seed = cfg.seed;
    opts.half_width = cfg.width.value_or(opts.half_width);
    opts.samples = cfg.samples.value_or(opts.samples);
    opts.held_out = std::max<std::size_t>(1, opts.samples / 10);
    opts.epochs = cfg.epochs.value_or(opts.epochs);
    opts.batch_size = cfg.batch_size.value_or(opts.batch_size);
    opts.learning_rate = cfg.lr.value_or(opts.learning_rate);
    opts.quant_positions = cfg.games.value_or(opts.quant_positions);
    const EunnTrainResult r = eunn_train(opts, cfg.out);

    const double coverage =
        r.quant_positions ? static_cast<double>(r.within_statistical) / static_cast<double>(r.quant_positions) : 1.0;
    const bool ok = r.mse_ratio() <= 0.25 && coverage >= 0.99 && !r.saturation_warning;
    out << std::setprecision(4);
    out << "held-out mse " << r.held_out_mse << ", target variance " << r.target_variance << ", ratio "
        << r.mse_ratio() << "\n";
    out << "quantization: " << r.quantization_summary << "\n";
    out << "float vs quantized over " << r.quant_positions << " positions: mean |err| " << r.mean_abs_error_cp
        << " cp, max " << r.max_abs_error_cp << " cp\n";
    out << "within statistical bound " << r.within_statistical << ", within worst-case bound " << r.within_worst_case
        << "\n";
    if (!cfg.out.empty()) out << "saved " << cfg.out << "\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_play(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const nn::TwoHeadNet net = load_model(require(cfg.model, "--model", "play"));
    Color human;
    if (cfg.side == "white" || cfg.side == "w")
        human = Color::White;
    else if (cfg.side == "black" || cfg.side == "b")
        human = Color::Black;
    else
        throw UsageError("--side must be white or black");
    const puct::Config pc = puct_config(cfg);

    Board b = starting_position();
    out << render(b);
    while (true) {
        if (const Outcome o = is_terminal(b); o.terminal) {
            out << color_name(*o.winner) << " wins\n";
            return 0;
        }
        Move m;
        if (b.turn() == human) {
            out << "your move: " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << "\nsession ended\n";
                return 0;
            }
            line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                       line.end());
            if (line.empty()) continue;
            const auto legal = generate_moves(b);
            try {
                m = parse_move(line);
            } catch (const std::exception&) {
                out << "cannot read \"" << line << "\"; moves look like a1a2\n";
                continue;
            }
            if (std::find(legal.begin(), legal.end(), m) == legal.end()) {
                out << "illegal move " << line << "\n";
                continue;
            }
        } else {
            m = cfg.puct ? most_visited(puct::search(b, net, pc)) : arena::policy_argmax(net.forward(to_network_input(b)), b);
            out << "engine plays " << move_to_string(m) << "\n";
        }
        b = apply_move(b, m);
        out << render(b);
    }
}

int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        const std::string& c = cfg.command;
        if (c == "solve") return cmd_solve(cfg, out);
        if (c == "gen-data") return cmd_gen_data(cfg, out);
        if (c == "train-sl") return cmd_train_sl(cfg, out);
        if (c == "selfplay") return cmd_selfplay(cfg, out);
        if (c == "arena") return cmd_arena(cfg, out);
        if (c == "mcts") return cmd_mcts(cfg, out);
        if (c == "eunn-selfcheck") return cmd_eunn_selfcheck(cfg, out);
        if (c == "eunn-train") return cmd_eunn_train(cfg, out);
        if (c == "play") return cmd_play(cfg, in, out);
        throw UsageError("unknown command: " + c);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hexazero::cli
