#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace hexazero::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Unset numeric fields fall back to each command's default.
struct CliConfig {
    std::string command;
    std::uint64_t seed = kDefaultSeed;

    std::string model;
    std::string dataset;
    std::string out;
    std::string position;      // solve / mcts; empty means the start
    std::string side = "white";  // play: the human's color

    std::optional<std::uint64_t> games;
    std::optional<std::uint64_t> iterations;
    std::optional<std::uint64_t> simulations;
    std::optional<double> tau;
    std::optional<double> cpuct;
    std::optional<std::size_t> epochs;
    std::optional<std::size_t> batch_size;
    std::optional<double> lr;
    std::optional<int> width;
    std::optional<std::size_t> samples;  // eunn-train dataset size
    std::size_t jobs = 1;

    bool csv = false;
    bool puct = false;
    bool book_faithful = false;
    bool duplicates = false;
};

// Bad flags, missing files, conflicting options. Reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int cmd_solve(const CliConfig& cfg, std::ostream& out);
int cmd_gen_data(const CliConfig& cfg, std::ostream& out);
int cmd_train_sl(const CliConfig& cfg, std::ostream& out);
int cmd_selfplay(const CliConfig& cfg, std::ostream& out);
int cmd_arena(const CliConfig& cfg, std::ostream& out);
int cmd_mcts(const CliConfig& cfg, std::ostream& out);
int cmd_eunn_selfcheck(const CliConfig& cfg, std::ostream& out);
int cmd_eunn_train(const CliConfig& cfg, std::ostream& out);
int cmd_play(const CliConfig& cfg, std::istream& in, std::ostream& out);

// Dispatches on cfg.command. Errors are printed to err; returns the process exit code.
int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

struct SelfcheckOptions {
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t sequences = 1000;
    int plies = 20;
    std::uint64_t mirror_positions = 10000;
    int half_width = 256;
};

struct SelfcheckResult {
    std::uint64_t plies_checked = 0;
    std::uint64_t accumulator_mismatches = 0;
    std::uint64_t mirror_checked = 0;
    std::uint64_t mirror_mismatches = 0;

    bool ok() const { return accumulator_mismatches == 0 && mirror_mismatches == 0; }
};

// Incremental accumulator vs full refresh at every ply of random move sequences, and
// evaluate(p) == evaluate(mirror(p)) on random positions.
SelfcheckResult eunn_selfcheck(const SelfcheckOptions& opts);

struct EunnTrainOptions {
    std::uint64_t seed = kDefaultSeed;
    int half_width = 32;
    std::size_t samples = 100000;
    std::size_t held_out = 10000;
    std::size_t epochs = 8;
    std::size_t batch_size = 32;
    double learning_rate = 0.05;
    std::uint64_t quant_positions = 10000;
};

struct EunnTrainResult {
    double held_out_mse = 0.0;   // target units
    double target_variance = 0.0;
    double mse_ratio() const { return target_variance > 0 ? held_out_mse / target_variance : 0.0; }
    std::uint64_t quant_positions = 0;
    std::uint64_t within_statistical = 0;
    std::uint64_t within_worst_case = 0;
    double mean_abs_error_cp = 0.0;
    double max_abs_error_cp = 0.0;
    std::string quantization_summary;
    bool saturation_warning = false;
};

// Float training on material targets, quantization, and the float-vs-quantized comparison.
// The trained quantized weights are written to weights_out when it is non-empty.
EunnTrainResult eunn_train(const EunnTrainOptions& opts, const std::string& weights_out = {});

}  // namespace hexazero::cli
