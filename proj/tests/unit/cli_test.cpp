#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "abd/cli.hpp"
#include "abd/instance.hpp"
#include "abd/oracle.hpp"
#include "abd/sat.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace abd {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("abduce-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    ex_ = (dir_ / "ex.abd").string();
    std::ofstream(ex_) << testing::kSkiing;
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    auto o = run(args);
    EXPECT_EQ(o.code, 0) << o.err;
    return json::parse(o.out);
  }

  std::string write(const std::string& name, const std::string& text) {
    auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  std::filesystem::path dir_;
  std::string ex_;
};

std::vector<std::vector<std::string>> solutions_of(const json& report) {
  return report["solutions"].get<std::vector<std::vector<std::string>>>();
}

TEST_F(Cli, SolveWithDetection) {
  auto r = run_json({"solve", ex_, "--class", "horn", "--detect", "3", "--self-check"});
  EXPECT_EQ(r["status"], "sat");
  EXPECT_EQ(r["backdoor"]["variables"].size(), 1u);
  EXPECT_EQ(r["self_check"], "passed");
  auto p = testing::ex();
  EXPECT_TRUE(oracle_is_solution(p, p.solution(r["solution"].get<std::vector<std::string>>())));
}

TEST_F(Cli, SolveRejectsBadBackdoor) {
  auto o = run({"solve", ex_, "--backdoor", "warm", "--class", "horn"});
  EXPECT_EQ(o.code, cli::kFailure);
  EXPECT_NE(o.err.find("backdoor verification failed"), std::string::npos);
  auto j = run({"solve", ex_, "--backdoor", "warm", "--class", "horn", "--json"});
  EXPECT_EQ(json::parse(j.out)["error"], "backdoor verification failed");
}

TEST_F(Cli, SolveInconsistentTheory) {
  auto path = write("bad.abd", "var h m\nhyp h\nman m\nclause\n");
  EXPECT_EQ(run_json({"solve", path})["status"], "unsat");
}

TEST_F(Cli, Enumerate) {
  auto minimal = run_json({"enumerate", ex_, "--minimal", "--self-check"});
  EXPECT_EQ(solutions_of(minimal),
            (std::vector<std::vector<std::string>>{{"precipitation", "warm"}, {"hurt"}}));
  auto all = run_json({"enumerate", ex_, "--self-check"});
  EXPECT_EQ(all["count"], 5);
  auto small = run_json({"enumerate", ex_, "--at-most-k", "1"});
  EXPECT_EQ(solutions_of(small), (std::vector<std::vector<std::string>>{{"hurt"}}));
}

TEST_F(Cli, CheckDetectRelevance) {
  EXPECT_EQ(run_json({"check", ex_, "--solution", "hurt"})["answer"], "yes");
  EXPECT_EQ(run_json({"check", ex_, "--solution", "hurt,warm"})["answer"], "yes");
  EXPECT_EQ(run_json({"check", ex_, "--solution", "warm", "--self-check"})["answer"], "no");
  auto d = run_json({"detect", ex_, "--class", "krom", "--max-k", "3"});
  EXPECT_EQ(d["size"], 1);
  EXPECT_EQ(d["backdoor"]["class"], "krom");
  EXPECT_EQ(run_json({"relevance", ex_, "--h", "warm", "--minimal"})["answer"], "yes");
  EXPECT_EQ(run_json({"relevance", ex_, "--h", "hurt"})["answer"], "yes");
}

TEST_F(Cli, AutoPrefersHornOnTies) {
  EXPECT_EQ(run_json({"detect", ex_})["backdoor"]["class"], "horn");
  // Krom needs no backdoor here, Horn needs one.
  auto path = write("krom.abd", "var a b c\nhyp a\nman c\nclause a b\nclause -a c\n");
  EXPECT_EQ(run_json({"detect", path})["backdoor"]["class"], "krom");
}

TEST_F(Cli, EncodeWritesDimacsAndRoleMap) {
  auto out = (dir_ / "ex.cnf").string();
  auto r = run_json({"encode", ex_, "-o", out, "--decoupled"});
  std::ifstream dimacs(out);
  std::string header;
  std::getline(dimacs, header);
  EXPECT_EQ(header.rfind("p cnf ", 0), 0u);
  std::ifstream roles_file(out + ".roles.json");
  json roles = json::parse(roles_file);
  EXPECT_EQ(roles["projection"].size(), 3u);
  EXPECT_EQ(roles["roles"].size(), r["encoding"]["variables"].get<std::size_t>());
  for (const auto& entry : roles["projection"]) {
    auto idx = entry["cnf_var"].get<std::size_t>() - 1;
    EXPECT_EQ(roles["roles"][idx]["role"], "selector");
  }
  auto minimal = run_json({"encode", ex_, "--minimal", "--h", "hurt"});
  EXPECT_EQ(minimal["dimacs"].get<std::string>().rfind("p cnf ", 0), 0u);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"frobnicate", ex_}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve", ex_, "--class", "cnf"}).code, cli::kUsageError);
  EXPECT_EQ(run({"relevance", ex_, "--h", "snows"}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve", (dir_ / "missing.abd").string()}).code, cli::kUsageError);
  auto bad = write("bad.abd", "var a\nfoo\n");
  auto o = run({"solve", bad});
  EXPECT_EQ(o.code, cli::kUsageError);
  EXPECT_NE(o.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, SolverFailuresExitWithTwo) {
  auto o = run({"solve", ex_, "--solver", "/nonexistent/solver {file}"});
  EXPECT_EQ(o.code, cli::kFailure);
}

TEST_F(Cli, ExternalSolver) {
  if (!default_external_solver()) GTEST_SKIP() << "no external solver configured";
  auto r = run_json({"enumerate", ex_, "--minimal", "--solver", "default", "--self-check"});
  EXPECT_EQ(r["count"], 2);
}

TEST_F(Cli, JsonReportsRoundTrip) {
  for (auto args : std::vector<std::vector<std::string>>{{"solve", ex_},
                                                         {"enumerate", ex_, "--minimal"},
                                                         {"check", ex_, "--solution", "hurt"},
                                                         {"detect", ex_},
                                                         {"relevance", ex_, "--h", "warm"}}) {
    json r = run_json(args);
    EXPECT_EQ(json::parse(r.dump()), r);
    if (r.contains("solution")) {
      auto p = testing::ex();
      auto s = p.solution(r["solution"].get<std::vector<std::string>>());
      EXPECT_EQ(json(p.names_of(s.hypotheses())), r["solution"]);
    }
  }
}

TEST_F(Cli, TextOutput) {
  auto o = run({"enumerate", ex_, "--minimal"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("{precipitation, warm}\n{hurt}\n"), std::string::npos);
}

}  // namespace
}  // namespace abd
