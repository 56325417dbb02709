#include <iostream>

#include "CLI11.hpp"
#include "hexazero/cli/commands.hpp"

using hexazero::cli::CliConfig;

namespace {

struct Subcommand {
    const char* name;
    const char* help;
};

constexpr Subcommand kCommands[] = {
    {"solve", "Exhaustive minimax value and best move (start position by default)"},
    {"gen-data", "Write the supervised dataset from the exhaustive solution"},
    {"train-sl", "Train the two-head network on a dataset"},
    {"selfplay", "Self-play reinforcement learning with PUCT"},
    {"arena", "Random White against random / untrained / trained Black"},
    {"mcts", "Run UCT (or PUCT with --puct) on a position and print root statistics"},
    {"eunn-selfcheck", "Incremental-vs-refresh and mirror-invariance suites for the quantized evaluator"},
    {"eunn-train", "Train the float evaluator on material targets, quantize, compare"},
    {"play", "Play Hexapawn against a trained network in the terminal"},
};

void add_options(CLI::App& sub, CliConfig& cfg) {
    sub.add_option("--seed", cfg.seed, "Master seed")->envname("HEXAZERO_SEED");
    sub.add_option("--model", cfg.model, "Network file");
    sub.add_option("--dataset", cfg.dataset, "Dataset file");
    sub.add_option("--out", cfg.out, "Output file");
    sub.add_option("--position", cfg.position, "Board as 9 cells (W/B/.), optional w|b side to move");
    sub.add_option("--side", cfg.side, "Human color for play")->check(CLI::IsMember({"white", "black", "w", "b"}));
    sub.add_option("--games", cfg.games, "Games (arena, selfplay per iteration) or sequences/positions (eunn)")
        ->check(CLI::PositiveNumber);
    sub.add_option("--iterations", cfg.iterations, "Self-play iterations, or UCT iterations for mcts")
        ->check(CLI::PositiveNumber);
    sub.add_option("--simulations", cfg.simulations, "PUCT simulations per move")->check(CLI::PositiveNumber);
    sub.add_option("--tau", cfg.tau, "PUCT temperature")->check(CLI::NonNegativeNumber);
    sub.add_option("--cpuct", cfg.cpuct, "PUCT exploration constant")->check(CLI::NonNegativeNumber);
    sub.add_option("--epochs", cfg.epochs, "Training epochs")->check(CLI::PositiveNumber);
    sub.add_option("--batch-size", cfg.batch_size, "Minibatch size")->check(CLI::PositiveNumber);
    sub.add_option("--lr", cfg.lr, "Learning rate")->check(CLI::PositiveNumber);
    sub.add_option("--width", cfg.width, "Evaluator accumulator half width")->check(CLI::PositiveNumber);
    sub.add_option("--samples", cfg.samples, "eunn-train dataset size, eunn-selfcheck mirror positions")
        ->check(CLI::PositiveNumber);
    sub.add_option("--jobs", cfg.jobs, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    sub.add_flag("--csv", cfg.csv, "Emit tables as CSV");
    sub.add_flag("--puct", cfg.puct, "Use network-guided PUCT search");
    sub.add_flag("--book-faithful", cfg.book_faithful, "UCT: propagate a single root-relative payout");
    sub.add_flag("--duplicates", cfg.duplicates, "gen-data: one sample per visit along every play line");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hexapawn AlphaZero-style pipeline and quantized chess evaluator"};
    app.require_subcommand(1);
    CliConfig cfg;
    for (const auto& c : kCommands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_options(*sub, cfg);
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }
    CLI11_PARSE(app, argc, argv);
    return hexazero::cli::run(cfg, std::cin, std::cout, std::cerr);
}
