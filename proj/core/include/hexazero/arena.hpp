#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hexazero/game.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/puct.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::arena {

struct MatchReport {
    std::uint64_t games = 0;
    std::uint64_t white_wins = 0;
    std::uint64_t black_wins = 0;

    double white_share() const { return games ? static_cast<double>(white_wins) / static_cast<double>(games) : 0.0; }
    double black_share() const { return games ? static_cast<double>(black_wins) / static_cast<double>(games) : 0.0; }
};

enum class MatchKind {
    RandomVsNet,   // random White, policy-argmax Black
    RandomVsRand,
    RandomVsPuct,  // random White, network-guided search as Black
};

// Highest masked policy probability among legal moves; ties go to the lowest output index.
Move policy_argmax(const nn::HeadOutput& out, const Board& b);

Color play_rand_vs_net(const nn::TwoHeadNet& net, Rng& rng);
Color play_rand_vs_rand(Rng& rng);
Color play_rand_vs_puct(const nn::TwoHeadNet& net, const puct::Config& cfg, Rng& rng);

struct MatchOptions {
    std::uint64_t games = 100;
    std::uint64_t seed = 42;
    std::size_t jobs = 1;
    puct::Config puct{};
};

// Game i is played with the stream derived from (seed, i). Throws std::invalid_argument if games is 0
// or a network kind is requested without a net.
MatchReport run_match(MatchKind kind, const nn::TwoHeadNet* net, const MatchOptions& opts);

// Rows shaped like "vs Trained Network   0%   100%".
std::string format_table(const std::string& label, const MatchReport& r);
std::string format_csv_row(const std::string& label, const MatchReport& r);

}  // namespace hexazero::arena
