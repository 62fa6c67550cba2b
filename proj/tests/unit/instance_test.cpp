#include <gtest/gtest.h>

#include <fstream>

#include "abd/error.hpp"
#include "abd/generator.hpp"
#include "abd/instance.hpp"
#include "abd/oracle.hpp"
#include "fixtures.hpp"

namespace abd {
namespace {

using testing::ex;
using testing::sol;
using testing::v;

TEST(ParseInstance, Example) {
  auto p = ex();
  EXPECT_EQ(p.num_vars(), 6u);
  EXPECT_EQ(p.name(Var(0)), "snows");
  EXPECT_EQ(p.names_of(p.hyps()), (std::vector<std::string>{"precipitation", "warm", "hurt"}));
  EXPECT_EQ(p.names_of(p.mans()), std::vector<std::string>{"sad"});
  EXPECT_EQ(p.theory().size(), 4u);
  EXPECT_EQ(p.theory().clauses()[0], testing::clause(p, {"-precipitation", "rains", "snows"}));
}

TEST(ParseInstance, OverlappingHypothesisAndManifestation) {
  try {
    parse_instance("var x y\nhyp x\nman x\n");
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("M ∩ H ≠ ∅"), std::string::npos);
  }
}

TEST(ParseInstance, EmptyClauseLine) {
  auto p = parse_instance("var x\nhyp x\nclause\n");
  ASSERT_EQ(p.theory().size(), 1u);
  EXPECT_TRUE(p.theory().clauses()[0].empty());
}

TEST(ParseInstance, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_instance("var x\n# comment\nfrobnicate x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_instance("hyp x\n"), ParseError);
  EXPECT_THROW(parse_instance("var x\nclause y\n"), InvalidArgument);
}

TEST(ParseInstance, JsonMirrorAndRoundTrip) {
  auto p = ex();
  auto q = parse_instance_json(to_json_text(p));
  EXPECT_EQ(q.names(), p.names());
  EXPECT_EQ(q.theory(), p.theory());
  auto r = parse_instance(to_text(p));
  EXPECT_EQ(r.theory(), p.theory());
  EXPECT_EQ(r.names_of(r.hyps()), p.names_of(p.hyps()));
}

TEST(ParseInstance, LoadDispatchesOnExtension) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto json_path = dir / "abd_instance_test.json";
  std::ofstream(json_path) << to_json_text(ex());
  EXPECT_EQ(load_instance(json_path).theory(), ex().theory());
  std::filesystem::remove(json_path);
  EXPECT_THROW(load_instance(dir / "does-not-exist.abd"), InvalidArgument);
}

TEST(Oracle, ExampleSolutions) {
  auto p = ex();
  EXPECT_TRUE(oracle_is_solution(p, sol(p, {"hurt"})));
  EXPECT_TRUE(oracle_is_solution(p, sol(p, {"hurt", "warm"})));
  EXPECT_FALSE(oracle_is_solution(p, sol(p, {"warm"})));
  std::vector<Solution> want{sol(p, {"hurt"}), sol(p, {"precipitation", "warm"}), sol(p, {"hurt", "warm"}),
                             sol(p, {"hurt", "precipitation"}), sol(p, {"precipitation", "warm", "hurt"})};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(oracle_solve(p), want);
  std::vector<Solution> minimal{sol(p, {"hurt"}), sol(p, {"precipitation", "warm"})};
  std::sort(minimal.begin(), minimal.end());
  EXPECT_EQ(oracle_subset_minimal(p), minimal);
}

TEST(Oracle, InconsistentTheoryHasNoSolution) {
  auto p = parse_instance("var x m\nhyp x\nman m\nclause\n");
  EXPECT_TRUE(oracle_solve(p).empty());
  EXPECT_TRUE(oracle_subset_minimal(p).empty());
}

TEST(Oracle, NoManifestations) {
  auto p = parse_instance("var x y\nhyp x y\nclause -x -y\n");
  auto all = oracle_solve(p);
  EXPECT_EQ(all.size(), 3u);  // ∅, {x}, {y}
  EXPECT_EQ(oracle_subset_minimal(p), std::vector<Solution>{Solution{}});
}

TEST(Oracle, CapIsEnforced) {
  std::string text = "var";
  for (int i = 0; i < 21; ++i) text += " v" + std::to_string(i);
  auto p = parse_instance(text + "\nhyp v0\n");
  EXPECT_FALSE(within_oracle_limits(p));
  EXPECT_THROW(oracle_solve(p), ResourceLimit);
}

TEST(Oracle, MinimalSetIsAnAntichainCoveringAllSolutions) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto g = random_instance(seed, InstanceLimits{}, PlantedBackdoor{BaseClass::Horn, 2});
    auto all = oracle_solve(g.instance);
    auto minimal = oracle_subset_minimal(g.instance);
    for (const auto& s : minimal) {
      EXPECT_TRUE(std::binary_search(all.begin(), all.end(), s));
      for (const auto& t : minimal)
        if (!(s == t)) EXPECT_FALSE(s.is_subset_of(t));
    }
    for (const auto& s : all)
      EXPECT_TRUE(std::any_of(minimal.begin(), minimal.end(), [&](const Solution& m) { return m.is_subset_of(s); }));
  }
}

TEST(Generator, DeterministicAndPlanted) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (BaseClass cls : {BaseClass::Horn, BaseClass::Krom}) {
      PlantedBackdoor planted{cls, seed % 4, seed % 2 == 1};
      auto g1 = random_instance(seed, InstanceLimits{}, planted);
      auto g2 = random_instance(seed, InstanceLimits{}, planted);
      EXPECT_EQ(g1.instance.theory(), g2.instance.theory());
      EXPECT_EQ(g1.planted.variables, g2.planted.variables);
      EXPECT_LE(g1.planted.variables.size(), planted.k);
      EXPECT_TRUE(verify_strong_backdoor(g1.instance.theory(), g1.planted.variables, cls));
    }
  }
}

TEST(Generator, KZeroIsInClass) {
  auto g = random_instance(1, InstanceLimits{}, PlantedBackdoor{BaseClass::Horn, 0});
  EXPECT_TRUE(is_horn(g.instance.theory()));
  auto k = random_instance(2, InstanceLimits{}, PlantedBackdoor{BaseClass::Krom, 2});
  EXPECT_TRUE(verify_strong_backdoor(k.instance.theory(), k.planted.variables, BaseClass::Krom));
}

TEST(Generator, InfeasibleLimits) {
  EXPECT_THROW(random_instance(1, InstanceLimits{3, 2, 2, 5, 3}, PlantedBackdoor{}), InvalidArgument);
  EXPECT_THROW(random_instance(1, InstanceLimits{4, 1, 2, 5, 3}, PlantedBackdoor{BaseClass::Horn, 3}),
               InvalidArgument);
}

}  // namespace
}  // namespace abd
