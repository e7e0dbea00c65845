#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using fgl::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fgl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fgl_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const json& j) const {
    fgl::write_text_file(path(name), j.dump());
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"family", "cube", "3"}).code, 2);
  EXPECT_EQ(run({"family", "tri"}).code, 2);
  EXPECT_EQ(run({"family", "torus", "3"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, FamilyWritesGraphAndSidecar) {
  auto r = run({"family", "tri", "5", "-o", path("t5.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = fgl::read_graph_file(path("t5.json"));
  EXPECT_EQ(doc.graph.vertex_count(), 21U);
  auto labels = fgl::read_json_file(path("t5.labels.json"));
  EXPECT_EQ(labels["0"], "v^0_0");
  auto report = json::parse(r.out);
  EXPECT_EQ(report["tool"], "fgl");
  EXPECT_EQ(report["version"], fgl::kVersion);
  EXPECT_EQ(report["edges"], 45);
  EXPECT_TRUE(report["eulerian"].get<bool>());
}

TEST_F(Cli, FamilyToStdout) {
  auto r = run({"family", "gk", "2"});
  ASSERT_EQ(r.code, 0);
  auto report = json::parse(r.out);
  EXPECT_EQ(report["graph"]["format"], fgl::kGraphFormat);
  EXPECT_EQ(report["labels"]["0"], "s");
}

TEST_F(Cli, SolveAndReplay) {
  ASSERT_EQ(run({"family", "torus", "2", "3", "-o", path("q.json")}).code, 0);
  auto r = run({"solve", "-g", path("q.json"), "--transcript", path("pv.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = json::parse(r.out);
  EXPECT_EQ(report["winner"], "ALICE");
  EXPECT_EQ(report["variant"], "feedback");
  EXPECT_TRUE(report["principal_variation"].is_array());

  auto rp = run({"replay", "-g", path("q.json"), "-t", path("pv.json")});
  EXPECT_EQ(rp.code, 0) << rp.err;
  EXPECT_TRUE(json::parse(rp.out)["matches_recorded"].get<bool>());

  auto t = fgl::read_json_file(path("pv.json"));
  t["outcome"]["winner"] = "BOB";
  fgl::write_text_file(path("bad.json"), t.dump());
  EXPECT_EQ(run({"replay", "-g", path("q.json"), "-t", path("bad.json")}).code, 1);

  t["moves"] = json::array({0, 0});
  fgl::write_text_file(path("illegal.json"), t.dump());
  EXPECT_EQ(run({"replay", "-g", path("q.json"), "-t", path("illegal.json")}).code, 2);
}

TEST_F(Cli, SolveByLabelAndVariant) {
  ASSERT_EQ(run({"family", "tri", "1", "-o", path("t1.json")}).code, 0);
  auto r = run({"solve", "-g", path("t1.json"), "-s", "v^1_1", "--variant", "edge-geo", "--no-pv"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = json::parse(r.out);
  EXPECT_EQ(report["start"], 2);
  EXPECT_EQ(report["variant"], "edge-geo");
  EXPECT_FALSE(report.contains("principal_variation"));
  EXPECT_EQ(run({"solve", "-g", path("t1.json"), "-s", "nowhere"}).code, 2);
  EXPECT_EQ(run({"solve", "-g", path("t1.json"), "--variant", "directed-edge-geo"}).code, 2);
}

TEST_F(Cli, BudgetAndInputErrors) {
  ASSERT_EQ(run({"family", "tri", "5", "-o", path("t5.json")}).code, 0);
  auto r = run({"solve", "-g", path("t5.json"), "--max-states", "100"});
  EXPECT_EQ(r.code, 3);
  auto report = json::parse(r.out);
  EXPECT_EQ(report["status"], "BUDGET_EXCEEDED");
  EXPECT_GT(report["states_visited"].get<std::uint64_t>(), 100U);
  EXPECT_EQ(run({"solve", "-g", path("missing.json")}).code, 2);
  fgl::write_text_file(path("junk.json"), "{oops");
  EXPECT_EQ(run({"solve", "-g", path("junk.json")}).code, 2);
  EXPECT_EQ(run({"solve", "-g", path("t5.json"), "--max-states", "0"}).code, 2);
}

TEST_F(Cli, DirectedSolveDefaultsToDirectedGeography) {
  auto g = write("d.json", fgl::to_json(fgl::Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}})));
  auto r = run({"solve", "-g", g});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["variant"], "directed-edge-geo");
  EXPECT_EQ(json::parse(r.out)["winner"], "ALICE");
}

TEST_F(Cli, KernelCommands) {
  ASSERT_EQ(run({"family", "tri", "7", "-o", path("t7.json")}).code, 0);
  auto c = run({"kernel", "construct", "tri", "7", "-o", path("k7.json")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["kernel"]["S"].size(), 12U);
  auto ok = run({"kernel", "check", "-g", path("t7.json"), "-k", path("k7.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(json::parse(ok.out)["ok"].get<bool>());

  write("bad.json", json{{"start", 0}, {"S", {0, 1}}});
  auto bad = run({"kernel", "check", "-g", path("t7.json"), "-k", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(json::parse(bad.out)["violations"].empty());

  auto c4 = write("c4.json", fgl::to_json(fgl::cycle(4)));
  auto e = run({"kernel", "enumerate", "-g", c4});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(json::parse(e.out)["count"], 1);
  auto f = run({"kernel", "find", "-g", c4});
  EXPECT_TRUE(json::parse(f.out)["exists"].get<bool>());

  EXPECT_EQ(run({"kernel", "construct", "tri", "5"}).code, 2);
  EXPECT_EQ(run({"kernel", "construct", "torus", "3", "4"}).code, 2);
  EXPECT_EQ(run({"kernel", "find", "-g", path("t7.json"), "--max-states", "5"}).code, 3);
}

TEST_F(Cli, StrategyVerify) {
  auto q = run({"strategy", "verify", "--policy", "q2n", "--params", "3"});
  ASSERT_EQ(q.code, 0) << q.err;
  auto report = json::parse(q.out);
  EXPECT_TRUE(report["verified"].get<bool>());
  EXPECT_EQ(report["owner"], "ALICE");
  EXPECT_EQ(run({"strategy", "verify", "--policy", "kernel", "--family", "tri", "--params", "2"}).code, 0);
  EXPECT_EQ(run({"strategy", "verify", "--policy", "kernel", "--family", "torus", "--params", "2", "2"}).code, 0);
  EXPECT_EQ(run({"strategy", "verify", "--policy", "gk", "--params", "2"}).code, 0);
  EXPECT_EQ(run({"strategy", "verify", "--policy", "q2n"}).code, 2);
  EXPECT_EQ(run({"strategy", "verify", "--policy", "chess"}).code, 2);

  // A kernel file that fails validation is rejected as bad input.
  auto g = write("c4.json", fgl::to_json(fgl::cycle(4)));
  write("k.json", json{{"start", 0}, {"S", {0}}});
  EXPECT_EQ(run({"strategy", "verify", "--policy", "kernel", "-g", g, "-k", path("k.json")}).code, 2);
  EXPECT_EQ(run({"strategy", "verify", "--policy", "kernel", "-g", g}).code, 0);
}

TEST_F(Cli, ReduceCommands) {
  auto d = write("d.json", fgl::to_json(fgl::Digraph::from_arcs(3, {{0, 1}, {0, 2}, {1, 2}})));
  auto chk = run({"reduce", "check", "-g", d});
  ASSERT_EQ(chk.code, 0) << chk.err;
  auto report = json::parse(chk.out);
  EXPECT_TRUE(report["agree"].get<bool>());
  EXPECT_TRUE(report["proof_shape"].get<bool>());

  auto pa = run({"reduce", "pseudo-arcs", "-g", d, "-o", path("h.json")});
  ASSERT_EQ(pa.code, 0);
  EXPECT_EQ(json::parse(pa.out)["edges"], 24);
  auto eu = run({"reduce", "eulerize", "-g", path("h.json")});
  ASSERT_EQ(eu.code, 0) << eu.err;
  EXPECT_TRUE(json::parse(eu.out)["eulerian"].get<bool>());
  EXPECT_EQ(run({"reduce", "pseudo-arcs", "-g", path("h.json")}).code, 2);
}

TEST_F(Cli, ScanDeterministicAcrossThreadCaps) {
  const std::vector<std::string> args{"scan", "--family", "torus", "--range", "2..4x2..4", "--what", "kernel",
                                      "--deterministic"};
  ::setenv("FGL_THREADS", "1", 1);
  auto one = run(args);
  ::setenv("FGL_THREADS", "4", 1);
  auto four = run(args);
  ::unsetenv("FGL_THREADS");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  EXPECT_NE(one.out.find("torus,3x3,\"(u_0,v_0)\",kernel,FOUND"), std::string::npos);
  EXPECT_NE(one.out.find("torus,3x4,\"(u_0,v_0)\",kernel,NONE"), std::string::npos);

  auto js = run({"scan", "--family", "tri", "--range", "1..3", "--format", "json", "--deterministic"});
  ASSERT_EQ(js.code, 0);
  auto report = json::parse(js.out);
  EXPECT_EQ(report["rows"].size(), 3U);
  EXPECT_EQ(report["rows"][0]["seconds"], 0.0);
}

TEST_F(Cli, WorkerCountHonoursCap) {
  ::setenv("FGL_THREADS", "2", 1);
  EXPECT_EQ(fgl::cli::worker_count(8), 2U);
  EXPECT_EQ(fgl::cli::worker_count(1), 1U);
  ::setenv("FGL_THREADS", "junk", 1);
  EXPECT_EQ(fgl::cli::worker_count(8), 8U);
  ::unsetenv("FGL_THREADS");
  EXPECT_GE(fgl::cli::worker_count(0), 1U);
}

TEST_F(Cli, ConfigHashTracksConfiguration) {
  auto a = json::parse(run({"family", "tri", "3"}).out);
  auto b = json::parse(run({"family", "tri", "3", "--threads", "2"}).out);
  auto c = json::parse(run({"family", "tri", "4"}).out);
  EXPECT_EQ(a["config_hash"], b["config_hash"]);
  EXPECT_NE(a["config_hash"], c["config_hash"]);
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, OtherFormats) {
  ASSERT_EQ(run({"family", "torus", "2", "3", "-o", path("q.json")}).code, 0);
  auto csv = run({"solve", "-g", path("q.json"), "--format", "csv", "--no-pv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, 4), "tool");
  EXPECT_NE(csv.out.find("ALICE"), std::string::npos);
  auto text = run({"solve", "-g", path("q.json"), "--format", "text", "--no-pv"});
  EXPECT_NE(text.out.find("winner: ALICE"), std::string::npos);
  EXPECT_EQ(run({"solve", "-g", path("q.json"), "--format", "xml"}).code, 2);
}
