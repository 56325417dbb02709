// End-to-end acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hexazero/arena.hpp"
#include "hexazero/classic_search.hpp"
#include "hexazero/cli/commands.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/puct.hpp"
#include "hexazero/training.hpp"
#include "hexazero/uct.hpp"

using namespace hexazero;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Verdict(std::uint64_t seed, const std::filesystem::path& work)> run;
};

// Independent exhaustive oracle: +1 White wins, -1 Black wins.
int oracle(const Board& b, std::map<Board, int>& memo) {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    int v;
    if (const auto t = is_terminal(b); t.terminal) {
        v = *t.winner == Color::White ? 1 : -1;
    } else {
        const bool white = b.turn() == Color::White;
        v = white ? -1 : 1;
        for (Move m : generate_moves(b)) {
            const int c = oracle(apply_move(b, m), memo);
            v = white ? std::max(v, c) : std::min(v, c);
        }
    }
    memo[b] = v;
    return v;
}

// Runs a CLI command and returns (exit code, stdout).
std::pair<int, std::string> run_cli(cli::CliConfig cfg) {
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run(cfg, in, out, err);
    return {code, out.str() + err.str()};
}

// Black wins of the named row in an arena CSV report.
long csv_black_wins(const std::string& csv, const std::string& label) {
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind(label + ",", 0) != 0) continue;
        return std::stol(line.substr(line.rfind(',') + 1));
    }
    return -1;
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

Verdict c1_solved(std::uint64_t, const std::filesystem::path&) {
    const SearchResult r = best_move(starting_position());
    return {r.value == -kWinScore, "start value " + std::to_string(r.value)};
}

Verdict c2_states(std::uint64_t, const std::filesystem::path&) {
    const auto n = training::enumerate_states().size();
    return {n == 188, std::to_string(n) + " reachable states (expected 188)"};
}

Verdict c3_alpha_beta(std::uint64_t, const std::filesystem::path&) {
    std::size_t agree = 0, fewer = 0, total = 0;
    for (const Board& b : training::enumerate_states()) {
        const bool max = b.turn() == Color::White;
        NodeCounter mm, ab;
        const int v_mm = minimax(b, kExhaustiveDepth, max, mm);
        const int v_ab = alpha_beta(b, kExhaustiveDepth, kAlphaSentinel, kBetaSentinel, max, ab);
        ++total;
        agree += v_mm == v_ab ? 1 : 0;
        fewer += ab.visited <= mm.visited ? 1 : 0;
    }
    return {agree == total && fewer == total, std::to_string(agree) + "/" + std::to_string(total) +
                                                  " values equal, " + std::to_string(fewer) + "/" +
                                                  std::to_string(total) + " with no more nodes"};
}

Verdict c4_supervised(std::uint64_t seed, const std::filesystem::path& work) {
    cli::CliConfig cfg;
    cfg.seed = seed;
    cfg.command = "gen-data";
    cfg.out = (work / "sl_data.txt").string();
    if (auto [code, text] = run_cli(cfg); code != 0) return {false, "gen-data failed: " + text};
    cfg.command = "train-sl";
    cfg.dataset = cfg.out;
    cfg.out = (work / "sl_model.txt").string();
    cfg.epochs = 512;
    cfg.batch_size = 16;
    if (auto [code, text] = run_cli(cfg); code != 0) return {false, "train-sl failed: " + text};
    cli::CliConfig arena;
    arena.seed = seed;
    arena.command = "arena";
    arena.model = cfg.out;
    arena.games = 100;
    arena.csv = true;
    const auto [code, text] = run_cli(arena);
    const long black = csv_black_wins(text, "vs Trained Network");
    return {code == 0 && black >= 99, "trained network as Black won " + std::to_string(black) + "/100"};
}

Verdict c5_selfplay(std::uint64_t seed, const std::filesystem::path& work) {
    cli::CliConfig cfg;
    cfg.seed = seed;
    cfg.command = "selfplay";
    cfg.out = (work / "rl_model.txt").string();
    cfg.iterations = 1;
    cfg.games = 10;
    cfg.simulations = 100;
    cfg.epochs = 256;
    cfg.batch_size = 16;
    if (auto [code, text] = run_cli(cfg); code != 0) return {false, "selfplay failed: " + text};
    cli::CliConfig arena;
    arena.seed = seed;
    arena.command = "arena";
    arena.model = cfg.out;
    arena.games = 100;
    arena.csv = true;
    const auto [code, text] = run_cli(arena);
    const long black = csv_black_wins(text, "vs Trained Network");
    return {code == 0 && black >= 99, "after one iteration Black won " + std::to_string(black) + "/100"};
}

Verdict c6_baselines(std::uint64_t seed, const std::filesystem::path&) {
    arena::MatchOptions opts;
    opts.games = 10000;
    opts.seed = seed;
    const double white = arena::run_match(arena::MatchKind::RandomVsRand, nullptr, opts).white_share();
    const nn::TwoHeadNet untrained(seed);
    const double black = arena::run_match(arena::MatchKind::RandomVsNet, &untrained, opts).black_share();
    const bool ok_rand = white >= 0.55 && white <= 0.70;
    const bool ok_net = black >= 0.45 && black <= 0.85;
    return {ok_rand && ok_net, "random vs random White " + fmt(white) + (ok_rand ? " (in band)" : " (OUT of band)") +
                                   ", untrained net Black " + fmt(black) + (ok_net ? " (in band)" : " (OUT of band)")};
}

Verdict c7_puct(std::uint64_t, const std::filesystem::path&) {
    puct::Tree t(starting_position());
    const auto left = t.add_child(t.root(), Move{6, 3}, 0.6);
    const auto right = t.add_child(t.root(), Move{7, 4}, 0.7);
    t.edge(left).N = t.edge(right).N = 1;
    t.edge(left).W = t.edge(left).Q = 0.5;
    t.edge(right).W = t.edge(right).Q = 0.4;
    t.edge(t.root_edge()).N = 2;
    const double sl = t.selection_score(left), sr = t.selection_score(right);
    Rng rng(0);
    const bool select_ok = std::abs(sl - (0.5 + 0.6 * std::sqrt(2.0) / 2)) <= 1e-12 &&
                           std::abs(sr - (0.4 + 0.7 * std::sqrt(2.0) / 2)) <= 1e-12 &&
                           std::round(sl * 100) == 92 && std::round(sr * 100) == 89 &&
                           t.select(t.root(), rng) == t.edge(left).child;

    puct::Tree b(starting_position());
    const auto top = b.add_child(b.root(), Move{7, 4}, 1.0);
    const auto below = b.add_child(b.edge(top).child, Move{0, 3}, 1.0);
    b.edge(below).N = 1;
    b.edge(below).W = 0.5;
    b.edge(top).N = 2;
    b.edge(top).W = 0.8;
    b.backpropagate(0.7, below);
    const double q1 = b.edge(below).Q, q2 = b.edge(top).Q;
    const bool backup_ok = std::abs(q1 - 0.6) <= 1e-12 && std::abs(q2 - 0.5) <= 1e-12;
    return {select_ok && backup_ok,
            "scores " + fmt(sl) + " vs " + fmt(sr) + ", backed-up Q " + fmt(q1, 12) + " then " + fmt(q2, 12)};
}

// Worst relative disagreement between analytic and central-difference gradients.
template <typename LossFn>
double worst_gradient_error(std::vector<nn::DenseLayer>& layers, const nn::Gradients& g, LossFn loss) {
    const double h = 1e-5;
    double worst = 0.0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        auto probe = [&](double& param, double analytic) {
            const double saved = param;
            param = saved + h;
            const double up = loss();
            param = saved - h;
            const double down = loss();
            param = saved;
            const double numeric = (up - down) / (2 * h);
            const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-5});
            worst = std::max(worst, std::abs(analytic - numeric) / scale);
        };
        for (std::size_t i = 0; i < layers[l].weights.size(); ++i) probe(layers[l].weights[i], g[l].dw[i]);
        for (std::size_t i = 0; i < layers[l].biases.size(); ++i) probe(layers[l].biases[i], g[l].db[i]);
    }
    return worst;
}

Verdict c8_gradients(std::uint64_t seed, const std::filesystem::path&) {
    double worst = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t s = 0; s < 3; ++s) {
        Rng rng(derive_seed(seed, s));
        nn::TwoHeadNet net(derive_seed(seed, 100 + s), 2, 8);
        std::vector<nn::TrainSample> batch(4);
        for (auto& t : batch) {
            for (int i = 0; i < kInputSize; ++i) t.input.push_back(u(rng) < 0.4 ? 1.0 : 0.0);
            std::vector<double> logits(kPolicySize);
            for (auto& x : logits) x = 3.0 * u(rng);
            t.target_policy = nn::softmax(logits);
            t.target_value = 2.0 * u(rng) - 1.0;
        }
        const auto g = net.backward(batch, 0.01);
        worst = std::max(worst, worst_gradient_error(net.layers(), g, [&] { return net.loss(batch, 0.01); }));

        const std::vector<int> dims{6, 7, 5, 3};
        nn::Mlp mlp(dims, nn::Activation::Sigmoid, nn::Activation::Softmax, rng);
        std::vector<nn::Sample> data(5);
        for (auto& d : data) {
            for (int i = 0; i < 6; ++i) d.input.push_back(2 * u(rng) - 1);
            d.target = {0.2, 0.5, 0.3};
        }
        const auto gm = mlp.backward(data, nn::LossKind::CrossEntropy);
        worst = std::max(worst, worst_gradient_error(mlp.layers(), gm, [&] {
                             return mlp.loss(data, nn::LossKind::CrossEntropy);
                         }));
    }
    const double product = 0.95 * 0.048 * 2;
    const bool worked = std::abs(product - 0.0912) <= 1e-12;
    return {worst <= 1e-4 && worked, "worst relative FD error " + fmt(worst, 3) + ", worked product " + fmt(product, 12)};
}

Verdict c9_worked_values(std::uint64_t, const std::filesystem::path&) {
    nn::DenseLayer p(2, 1, nn::Activation::Linear);
    p.weights = {6, 6};
    p.biases = {-10};
    bool and_ok = true;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            double pre = 0;
            p.forward(std::vector<double>{double(a), double(b)}, std::span<double>(&pre, 1));
            and_ok = and_ok && (pre >= 0) == (a && b);
        }

    nn::TrainSample s1, s2;
    s1.target_policy = {1, 0};
    s2.target_policy = {0, 1};
    const std::vector<nn::HeadOutput> outs{{{0.7, 0.3}, 0.0}, {{0.7, 0.3}, 0.0}};
    const std::vector<nn::TrainSample> targets{s1, s2};
    const double nll = nn::combined_loss(outs, targets, 0.0, 0.0);
    const bool nll_ok = std::abs(nll - (-std::log(0.7) - std::log(0.3)) / 2) <= 1e-12 && std::round(nll * 100) == 78;

    double worst = 0.0;
    for (double x = -6; x <= 6; x += 0.25) {
        const double s = nn::sigmoid(x);
        worst = std::max(worst, std::abs(nn::derivative_from_output(nn::Activation::Sigmoid, s) - s * (1 - s)));
    }
    const bool deriv_ok = worst == 0.0;
    return {and_ok && nll_ok && deriv_ok, std::string("AND table ") + (and_ok ? "ok" : "WRONG") + ", NLL " +
                                              fmt(nll, 6) + ", sigmoid' identity max error " + fmt(worst, 3)};
}

Verdict c10_eunn_exact(std::uint64_t seed, const std::filesystem::path&) {
    cli::SelfcheckOptions opts;
    opts.seed = seed;
    opts.sequences = 10000;
    opts.plies = 20;
    opts.mirror_positions = 10000;
    const auto r = cli::eunn_selfcheck(opts);
    return {r.ok() && r.plies_checked == 200000 && r.mirror_checked == 10000,
            std::to_string(r.accumulator_mismatches) + " mismatches over " + std::to_string(r.plies_checked) +
                " plies, " + std::to_string(r.mirror_mismatches) + " mirror mismatches over " +
                std::to_string(r.mirror_checked) + " positions"};
}

Verdict c11_eunn_learning(std::uint64_t seed, const std::filesystem::path&) {
    cli::EunnTrainOptions opts;
    opts.seed = seed;
    const auto r = cli::eunn_train(opts);
    const double coverage = static_cast<double>(r.within_statistical) / static_cast<double>(r.quant_positions);
    const bool ok = r.mse_ratio() <= 0.25 && coverage >= 0.99;
    return {ok, "held-out MSE/variance " + fmt(r.mse_ratio(), 3) + ", quantized within bound on " +
                    std::to_string(r.within_statistical) + "/" + std::to_string(r.quant_positions) +
                    " (worst-case bound " + std::to_string(r.within_worst_case) + "), mean |err| " +
                    fmt(r.mean_abs_error_cp, 3) + " cp"};
}

Verdict c12_uct(std::uint64_t seed, const std::filesystem::path&) {
    std::map<Board, int> memo;
    std::size_t winnable = 0, found = 0;
    std::uint64_t stream = 0;
    for (const Board& b : training::enumerate_states()) {
        if (is_terminal(b).terminal) continue;
        const int mover = b.turn() == Color::White ? 1 : -1;
        if (oracle(b, memo) != mover) continue;
        ++winnable;
        uct::Config cfg;
        cfg.iterations = 10000;
        cfg.seed = derive_seed(seed, stream++);
        const Move m = uct::search(b, cfg).best;
        found += oracle(apply_move(b, m), memo) == mover ? 1 : 0;
    }
    const double share = winnable ? static_cast<double>(found) / static_cast<double>(winnable) : 0.0;
    return {share >= 0.95, std::to_string(found) + "/" + std::to_string(winnable) +
                               " winnable states answered with a winning move (" + fmt(share * 100, 4) + "%)"};
}

std::set<int> parse_ids(const std::string& text) {
    std::set<int> ids;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) ids.insert(std::stoi(tok));
    return ids;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one line each"};
    std::uint64_t seed = cli::kDefaultSeed;
    std::string only, expect_fail;
    std::string work = (std::filesystem::temp_directory_path() / "hexazero_acceptance").string();
    app.add_option("--seed", seed, "Master seed")->envname("HEXAZERO_SEED");
    app.add_option("--only", only, "Comma-separated criterion numbers to run");
    app.add_option("--expect-fail", expect_fail,
                   "Comma-separated criteria documented as not reproducible; reported but not fatal");
    app.add_option("--work-dir", work, "Directory for pipeline artifacts");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "solved-game oracle", 1, c1_solved},
        {2, "reachable state count", 1, c2_states},
        {3, "alpha-beta equals minimax", 10, c3_alpha_beta},
        {4, "supervised pipeline", 600, c4_supervised},
        {5, "self-play pipeline", 900, c5_selfplay},
        {6, "arena baselines", 60, c6_baselines},
        {7, "PUCT worked example", 1, c7_puct},
        {8, "gradient correctness", 10, c8_gradients},
        {9, "hand-worked micro-values", 1, c9_worked_values},
        {10, "EUNN exactness", 120, c10_eunn_exact},
        {11, "EUNN learning sanity", 600, c11_eunn_learning},
        {12, "UCT convergence", 300, c12_uct},
    };
    const std::set<int> selected = parse_ids(only);
    const std::set<int> known = parse_ids(expect_fail);
    std::filesystem::create_directories(work);

    int unexpected = 0, passed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict o;
        try {
            o = c.run(seed, work);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = o.pass && in_time;
        ++ran;
        passed += pass ? 1 : 0;
        std::string note;
        if (!in_time) note += " [over the " + fmt(c.time_limit_s) + " s budget]";
        if (!pass && known.count(c.id)) note += " [known, documented in README]";
        if (pass && known.count(c.id)) note += " [listed as known failure but passed]";
        if (!pass && !known.count(c.id)) ++unexpected;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << ": " << o.detail
                  << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat << note
                  << std::endl;
    }
    std::cout << passed << "/" << ran << " criteria passed";
    if (unexpected) std::cout << ", " << unexpected << " unexpected failure(s)";
    std::cout << "\n";
    return unexpected ? 1 : 0;
}
