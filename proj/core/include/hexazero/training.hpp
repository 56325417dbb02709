#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <vector>

#include "hexazero/game.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/puct.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::training {

using Dataset = std::vector<nn::TrainSample>;

// Every (cells, turn) state reachable from the start by legal play, terminal states included.
std::set<Board> enumerate_states();

// One sample per distinct non-terminal state: one-hot policy at the first optimal move,
// value +1 / -1 for the exhaustive winner. With path_duplicates every visit along every
// play line emits a sample, as a plain recursive walk would.
Dataset generate_supervised_dataset(bool path_duplicates = false);

// First optimal move under generation order, from the exhaustive solution.
Move oracle_move(const Board& b);

struct SupervisedConfig {
    std::size_t epochs = 512;
    std::size_t batch_size = 16;
    double learning_rate = 0.1;
    double reg_c = 0.0;
    std::uint64_t seed = 42;
};

// Returns the per-epoch loss history. Throws std::invalid_argument on an empty dataset.
std::vector<double> train_supervised(nn::TwoHeadNet& net, const Dataset& ds, const SupervisedConfig& cfg = {});

struct SelfPlayConfig {
    std::size_t iterations = 11;
    std::size_t games_per_iteration = 10;
    std::size_t epochs = 256;
    std::size_t batch_size = 16;
    double learning_rate = 0.1;
    double reg_c = 0.0;
    puct::Config puct{};
    std::size_t checkpoint_every = 10;
    std::uint64_t seed = 42;
    std::size_t jobs = 1;
};

struct GameRecord {
    std::vector<Board> positions;
    std::vector<Move> moves;
    Color winner = Color::Black;
    Dataset samples;
};

// Samples each move from the masked 28-entry search distribution; labels every
// recorded position with the final winner (+1 White, -1 Black).
GameRecord self_play_game(const nn::TwoHeadNet& net, const puct::Config& cfg, Rng& rng);

struct Checkpoint {
    std::size_t iteration = 0;
    nn::TwoHeadNet net;
};

struct SelfPlayResult {
    std::vector<Checkpoint> checkpoints;
    std::vector<std::size_t> samples_per_iteration;
    std::vector<double> final_epoch_loss;
    Dataset last_samples;
};

using IterationCallback = std::function<void(std::size_t iteration, const SelfPlayResult&)>;

// Continuous replacement: each iteration's games use the net as updated by the previous fit.
SelfPlayResult train_selfplay(nn::TwoHeadNet& net, const SelfPlayConfig& cfg, const IterationCallback& on_iteration = {});

// Text format: 21 bits '|' 28 comma-separated policy values '|' value target.
void write_dataset(std::ostream& os, const Dataset& ds);
Dataset read_dataset(std::istream& is);
void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

std::filesystem::path checkpoint_path(const std::filesystem::path& base, std::size_t iteration);

}  // namespace hexazero::training
