#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "hexazero/cli/commands.hpp"
#include "hexazero/neural_net.hpp"
#include "hexazero/training.hpp"

using namespace hexazero;
using namespace hexazero::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const CliConfig& cfg, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = run(cfg, in, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "hexazero_cli_test") {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

CliConfig command(const char* name) {
    CliConfig c;
    c.command = name;
    return c;
}

}  // namespace

TEST_CASE("solve") {
    const Run start = invoke(command("solve"));
    CHECK(start.code == 0);
    CHECK(start.out.find("value -10000 (Black wins with best play)") != std::string::npos);

    CliConfig promo = command("solve");
    promo.position = "..B W.. .W. w";  // a2-a3 promotes
    const Run r = invoke(promo);
    CHECK(r.code == 0);
    CHECK(r.out.find("value 10000") != std::string::npos);
    CHECK(r.out.find("best move a2a3") != std::string::npos);

    promo.position = "BBB ... WWx";
    const Run bad = invoke(promo);
    CHECK(bad.code != 0);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("usage errors") {
    CHECK(invoke(command("nonsense")).code == 2);
    CHECK(invoke(command("gen-data")).code == 2);
    CliConfig train = command("train-sl");
    train.out = "x";
    CHECK(invoke(train).code == 2);
    train.dataset = "/nonexistent/data.txt";
    CHECK(invoke(train).code == 2);
    CliConfig arena = command("arena");
    arena.puct = true;
    CHECK(invoke(arena).code == 2);
    CliConfig mcts = command("mcts");
    mcts.puct = true;
    mcts.book_faithful = true;
    CHECK(invoke(mcts).code == 2);
    CHECK(invoke(command("play")).code == 2);
}

TEST_CASE("supervised pipeline through the commands") {
    TempDir dir;
    CliConfig gen = command("gen-data");
    gen.out = dir.file("d.txt");
    REQUIRE(invoke(gen).code == 0);
    CHECK(training::load_dataset(gen.out).size() == 70);
    gen.duplicates = true;
    REQUIRE(invoke(gen).code == 0);
    CHECK(training::load_dataset(gen.out).size() == 118);

    CliConfig train = command("train-sl");
    train.dataset = gen.out;
    train.out = dir.file("m.txt");
    REQUIRE(invoke(train).code == 0);
    const auto first = nn::load(train.out);
    REQUIRE(invoke(train).code == 0);
    CHECK(nn::load(train.out) == first);

    CliConfig arena = command("arena");
    arena.model = train.out;
    arena.csv = true;
    const Run a = invoke(arena);
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("opponent,games,white_wins,black_wins\n", 0) == 0);
    CHECK(a.out.find("vs Trained Network,100,0,100") != std::string::npos);
    arena.jobs = 3;
    CHECK(invoke(arena).out == a.out);
    arena.csv = false;
    const Run table = invoke(arena);
    CHECK(table.out.find("vs Trained Network") != std::string::npos);
    CHECK(table.out.find("100%") != std::string::npos);

    SUBCASE("play rejects illegal input and announces the winner") {
        CliConfig play = command("play");
        play.model = train.out;
        const Run p = invoke(play, "a1a3\nb1b2\n");
        CHECK(p.code == 0);
        CHECK(p.out.find("illegal move a1a3") != std::string::npos);
        CHECK(p.out.find("engine plays") != std::string::npos);
        CHECK(p.out.find("session ended") != std::string::npos);

        // Human as Black replying with the first legal move each turn always reaches an end.
        play.side = "black";
        std::string moves;
        for (const char* m : {"a3a2", "b3b2", "c3c2", "a3b2", "b3a2", "b3c2", "c3b2", "a2a1", "b2b1", "c2c1",
                              "a2b1", "b2a1", "b2c1", "c2b1"})
            moves += std::string(m) + "\n";
        std::string script;
        for (int i = 0; i < 6; ++i) script += moves;
        const Run g = invoke(play, script);
        CHECK(g.code == 0);
        CHECK((g.out.find("White wins") != std::string::npos || g.out.find("Black wins") != std::string::npos));
    }
}

TEST_CASE("selfplay writes checkpoints and is deterministic") {
    TempDir dir;
    CliConfig sp = command("selfplay");
    sp.out = dir.file("rl.txt");
    sp.iterations = 2;
    sp.games = 2;
    sp.simulations = 10;
    sp.epochs = 2;
    const Run a = invoke(sp);
    REQUIRE(a.code == 0);
    CHECK(std::filesystem::exists(dir.file("rl_it0.txt")));
    CHECK(a.out.find("iteration 1:") != std::string::npos);
    const auto net = nn::load(sp.out);
    sp.jobs = 2;
    REQUIRE(invoke(sp).code == 0);
    CHECK(nn::load(sp.out) == net);
}

TEST_CASE("mcts prints root statistics") {
    CliConfig m = command("mcts");
    m.iterations = 2000;
    const Run u = invoke(m);
    CHECK(u.code == 0);
    CHECK(u.out.find("best ") != std::string::npos);
    CHECK(invoke(m).out == u.out);
    // Promoting and b1-b2 both win here.
    m.position = "..B W.. .W. w";
    const std::string won = invoke(m).out;
    CHECK((won.find("best a2a3") != std::string::npos || won.find("best b1b2") != std::string::npos));

    CliConfig p = command("mcts");
    p.puct = true;
    p.simulations = 50;
    const Run r = invoke(p);
    CHECK(r.code == 0);
    CHECK(r.out.find("pi") != std::string::npos);
}

TEST_CASE("eunn commands") {
    CliConfig c = command("eunn-selfcheck");
    c.seed = 1;
    c.games = 30;
    c.samples = 200;
    c.width = 32;
    const Run a = invoke(c);
    CHECK(a.code == 0);
    CHECK(a.out.find("600 plies") != std::string::npos);
    CHECK(a.out.find("PASS") != std::string::npos);
    CHECK(invoke(c).out == a.out);

    TempDir dir;
    CliConfig t = command("eunn-train");
    t.width = 8;
    t.samples = 3000;
    t.epochs = 1;
    t.games = 200;
    t.out = dir.file("w.bin");
    const Run r = invoke(t);
    CHECK(r.out.find("held-out mse") != std::string::npos);
    CHECK(std::filesystem::exists(t.out));
    CHECK(invoke(t).out == r.out);
}
