/**
 * @file test_cli.cpp
 * @brief Subcommand behaviour through arcscan::run.
 */
#include "arcscan/cli.hpp"
#include "arcscan/digigeom.hpp"
#include "arcscan/raster.hpp"
#include "arcscan/serialize.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace arcscan;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, AlgorithmNames) {
    EXPECT_EQ(parse_algorithm("csa"), Algorithm::csa);
    EXPECT_EQ(parse_algorithm("rht"), Algorithm::rht);
    EXPECT_EQ(parse_algorithm("evm"), Algorithm::evm);
    EXPECT_THROW(parse_algorithm("hough"), std::invalid_argument);
    EXPECT_STREQ(to_string(Algorithm::evm), "evm");
}

TEST(Cli, ThreadCap) {
    ::setenv("ARCSCAN_THREADS", "3", 1);
    EXPECT_EQ(thread_cap(), 3u);
    ::setenv("ARCSCAN_THREADS", "zero", 1);
    EXPECT_THROW(thread_cap(), std::invalid_argument);
    ::unsetenv("ARCSCAN_THREADS");
    EXPECT_GE(thread_cap(), 1u);
}

TEST(Cli, DetectSingleCircle) {
    const auto dir = oracle::temp_dir("cli_detect");
    BinaryImage img(200, 200);
    for (const auto p : midpoint_circle({100, 100}, 40)) img.set(p);
    save_pbm(img, dir / "c.pbm");
    const auto r = call({"detect", "--in", (dir / "c.pbm").string(), "--out", (dir / "arcs.json").string(),
                         "--overlay", (dir / "o.svg").string(), "--mask", (dir / "m.pbm").string()});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = read_json(dir / "arcs.json");
    ASSERT_EQ(doc["arcs"].size(), 1u);
    EXPECT_NEAR(doc["arcs"][0]["radius"].get<double>(), 40.0, 2.0);
    EXPECT_EQ(doc["algorithm"], "csa");
    EXPECT_NE(slurp(dir / "o.svg").find("<svg"), std::string::npos);
    EXPECT_EQ(load_binary(dir / "m.pbm"), img);
}

TEST(Cli, DetectToStdout) {
    const auto dir = oracle::temp_dir("cli_stdout");
    BinaryImage img(100, 100);
    for (const auto p : midpoint_circle({50, 50}, 20)) img.set(p);
    save_pbm(img, dir / "c.pbm");
    for (const char* algo : {"csa", "rht", "evm"}) {
        const auto r = call({"detect", "--algo", algo, "--in", (dir / "c.pbm").string()});
        ASSERT_EQ(r.status, 0) << r.err;
        const auto doc = json::parse(r.out);
        EXPECT_EQ(doc["algorithm"], algo);
        EXPECT_GE(doc["arcs"].size(), 1u);
    }
}

TEST(Cli, SynthThenEvalPerfect) {
    const auto dir = oracle::temp_dir("cli_synth");
    auto r = call({"synth", "--seed", "3", "--out", (dir / "s.pbm").string(), "--truth",
                   (dir / "t.json").string(), "--scene-out", (dir / "scene.json").string()});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto truth = load_truth(dir / "t.json");
    // The ground-truth arc mask scored against itself is perfect.
    r = call({"eval", "--mask", (dir / "t.arc.pbm").string(), "--truth", (dir / "t.json").string(), "--csv",
              (dir / "m.csv").string()});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["metrics"]["AD"].get<double>(), 1.0);
    EXPECT_EQ(doc["metrics"]["N_g"].get<std::size_t>(), truth.arc_mask.count());
    EXPECT_EQ(slurp(dir / "m.csv").substr(0, 31), "N_c,N_g,N_p,N_fa,N_fr,E1,E2,AD\n");
    EXPECT_EQ(scene_to_json(scene_from_json(read_json(dir / "scene.json"))), read_json(dir / "scene.json"));
}

TEST(Cli, FullLoopWithMatching) {
    const auto dir = oracle::temp_dir("cli_loop");
    const auto p = [&](const char* f) { return (dir / f).string(); };
    ASSERT_EQ(call({"synth", "--seed", "5", "--out", p("s.png"), "--truth", p("t.json")}).status, 0);
    ASSERT_EQ(call({"detect", "--in", p("s.png"), "--out", p("a.json"), "--mask", p("m.pbm")}).status, 0);
    const auto r = call({"eval", "--in", p("a.json"), "--mask", p("m.pbm"), "--truth", p("t.json")});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_GE(doc["metrics"]["AD"].get<double>(), 0.95);
    EXPECT_EQ(doc["matching"]["missed"], 0);
    EXPECT_EQ(doc["matching"]["spurious"], 0);
}

TEST(Cli, Bench) {
    const auto dir = oracle::temp_dir("cli_bench");
    const auto r = call({"bench", "--count", "2", "--seed", "1", "--algo", "csa,evm", "--out", (dir / "b.csv").string()});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream in(slurp(dir / "b.csv"));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "scene,algo,seed,n_pixels,time_s,E1,E2,AD,matched,missed,spurious");
    EXPECT_EQ(lines[1].rfind("random-1,csa,", 0), 0u);
    EXPECT_EQ(lines[2].rfind("random-1,evm,", 0), 0u);
    EXPECT_EQ(lines[3].rfind("random-2,csa,", 0), 0u);
}

TEST(Cli, MissingFileNamesPath) {
    const auto r = call({"detect", "--in", "/nonexistent/dir/img.png"});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("/nonexistent/dir/img.png"), std::string::npos);
    EXPECT_NE(r.err.find("arcscan: error:"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(call({}).status, 0);
    EXPECT_NE(call({"detect"}).status, 0);
    EXPECT_NE(call({"frobnicate"}).status, 0);
    const auto dir = oracle::temp_dir("cli_usage");
    BinaryImage img(20, 20);
    save_pbm(img, dir / "e.pbm");
    const auto r = call({"detect", "--algo", "nope", "--in", (dir / "e.pbm").string()});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("nope"), std::string::npos);
}

TEST(Cli, HelpListsDefaults) {
    const auto d = call({"detect", "--help"});
    EXPECT_EQ(d.status, 0);
    EXPECT_NE(d.out.find("--tau-c"), std::string::npos);
    EXPECT_NE(d.out.find("--budget"), std::string::npos);
    EXPECT_NE(d.out.find("2000"), std::string::npos);
    const auto e = call({"eval", "--help"});
    EXPECT_NE(e.out.find("0.02"), std::string::npos);
    for (const char* sub : {"synth", "bench"}) EXPECT_EQ(call({sub, "--help"}).status, 0);
}
