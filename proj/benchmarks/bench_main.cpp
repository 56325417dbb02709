#include <benchmark/benchmark.h>

#include <vector>

#include "hexazero/eunn.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/puct.hpp"

using namespace hexazero;
using namespace hexazero::eunn;

namespace {

void BM_MaddPairs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    std::vector<std::uint8_t> a(n);
    std::vector<std::int8_t> b(n);
    for (auto& x : a) x = static_cast<std::uint8_t>(rng() % 128);
    for (auto& x : b) x = static_cast<std::int8_t>(static_cast<int>(rng() % 256) - 128);
    for (auto _ : state) benchmark::DoNotOptimize(madd_pairs(a, b));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_MaddPairs)->Arg(32)->Arg(512);

// A pool of (position, move) pairs so both variants touch the same work.
struct MovePool {
    std::vector<ChessPosition> before;
    std::vector<ChessMove> moves;
    std::vector<ChessPosition> after;
};

MovePool make_pool(std::size_t n) {
    MovePool pool;
    Rng rng(2);
    while (pool.before.size() < n) {
        const ChessPosition p = random_position(rng);
        const auto ms = pseudo_legal_moves(p);
        if (ms.empty()) continue;
        const ChessMove m = ms[uniform_index(rng, ms.size())];
        pool.before.push_back(p);
        pool.moves.push_back(m);
        pool.after.push_back(make_move(p, m));
    }
    return pool;
}

void BM_AccumulatorUpdate(benchmark::State& state) {
    Rng rng(3);
    const QuantEvalNet net = QuantEvalNet::random(rng, static_cast<int>(state.range(0)));
    const MovePool pool = make_pool(256);
    std::vector<Accumulator> accs(pool.before.size());
    for (std::size_t i = 0; i < accs.size(); ++i) refresh(accs[i], pool.before[i], net);
    std::size_t i = 0;
    for (auto _ : state) {
        // The 1 KB copy is small next to the delta; pausing the timer would cost more.
        Accumulator acc = accs[i];
        update(acc, pool.after[i], move_delta(pool.before[i], pool.moves[i]), net);
        benchmark::DoNotOptimize(acc.halves[0].data());
        i = (i + 1) % accs.size();
    }
}
BENCHMARK(BM_AccumulatorUpdate)->Arg(256);

void BM_AccumulatorRefresh(benchmark::State& state) {
    Rng rng(3);
    const QuantEvalNet net = QuantEvalNet::random(rng, static_cast<int>(state.range(0)));
    const MovePool pool = make_pool(256);
    Accumulator acc;
    std::size_t i = 0;
    for (auto _ : state) {
        refresh(acc, pool.after[i], net);
        benchmark::DoNotOptimize(acc.halves[0].data());
        i = (i + 1) % pool.after.size();
    }
}
BENCHMARK(BM_AccumulatorRefresh)->Arg(256);

void BM_QuantEvaluate(benchmark::State& state) {
    Rng rng(4);
    const QuantEvalNet net = QuantEvalNet::random(rng, 256);
    const ChessPosition p = random_position(rng);
    Accumulator acc;
    refresh(acc, p, net);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, acc, net));
}
BENCHMARK(BM_QuantEvaluate);

void BM_TwoHeadForward(benchmark::State& state) {
    const nn::TwoHeadNet net(5);
    const NetInput bits = to_network_input(starting_position());
    for (auto _ : state) benchmark::DoNotOptimize(net.forward(bits));
}
BENCHMARK(BM_TwoHeadForward);

void BM_PuctSearch(benchmark::State& state) {
    const nn::TwoHeadNet net(6);
    puct::Config cfg;
    cfg.simulations = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(puct::search(starting_position(), net, cfg));
}
BENCHMARK(BM_PuctSearch)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
