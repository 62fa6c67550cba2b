#include <gtest/gtest.h>

#include "abd/error.hpp"
#include "abd/oracle.hpp"
#include "abd/queries.hpp"
#include "corpus.hpp"
#include "fixtures.hpp"

namespace abd {
namespace {

using testing::bd;
using testing::ex;
using testing::sol;
using testing::v;

class Queries : public ::testing::TestWithParam<BaseClass> {};

TEST_P(Queries, EnumerateExample) {
  auto p = ex();
  auto b = bd(p, {"snows"}, GetParam());
  EXPECT_EQ(enumerate_solutions(p, b), oracle_solve(p));
  EXPECT_EQ(enumerate_minimal(p, b), oracle_subset_minimal(p));
  QueryOptions one;
  one.at_most_k = 1;
  EXPECT_EQ(enumerate_solutions(p, b, one), std::vector<Solution>{sol(p, {"hurt"})});
  QueryOptions many;
  many.at_most_k = 3;
  EXPECT_EQ(enumerate_solutions(p, b, many), oracle_solve(p));
}

TEST_P(Queries, EnumerateUnsatisfiable) {
  auto p = parse_instance("var h m\nhyp h\nman m\nclause -h -m\n");
  EXPECT_TRUE(enumerate_solutions(p, BackdoorSet{{}, GetParam()}).empty());
  EXPECT_TRUE(enumerate_minimal(p, BackdoorSet{{}, GetParam()}).empty());
}

TEST_P(Queries, EmptySolutionIsTheOnlyMinimalOne) {
  auto p = parse_instance("var h m\nhyp h\nman m\nclause m\n");
  EXPECT_EQ(enumerate_minimal(p, BackdoorSet{{}, GetParam()}), std::vector<Solution>{Solution{}});
}

// A hypothesis that implies another one: the direct encoding reads h2 off
// the theory variables, so {h1} alone is never reported.
TEST_P(Queries, DecouplingFindsImpliedHypothesisCandidates) {
  auto p = parse_instance("var h1 h2 m\nhyp h1 h2\nman m\nclause -h1 h2\nclause -h1 m\n");
  auto b = BackdoorSet{{}, GetParam()};
  EXPECT_EQ(enumerate_solutions(p, b), oracle_solve(p));
  EXPECT_TRUE(std::binary_search(oracle_solve(p).begin(), oracle_solve(p).end(), sol(p, {"h1"})));
}

TEST_P(Queries, EnumerationMatchesOracleOnCorpus) {
  for (const auto& g : testing::corpus(GetParam(), 80)) {
    EXPECT_EQ(enumerate_solutions(g.instance, g.planted), oracle_solve(g.instance)) << to_text(g.instance);
    EXPECT_EQ(enumerate_minimal(g.instance, g.planted), oracle_subset_minimal(g.instance)) << to_text(g.instance);
  }
}

TEST_P(Queries, Relevance) {
  auto p = ex();
  auto b = bd(p, {"snows"}, GetParam());
  Solution witness;
  EXPECT_TRUE(relevance(p, b, v(p, "hurt"), RelevanceMode::AnySolution, {}, &witness));
  EXPECT_TRUE(witness.contains(v(p, "hurt")));
  EXPECT_TRUE(oracle_is_solution(p, witness));
  EXPECT_TRUE(relevance(p, b, v(p, "warm"), RelevanceMode::MinimalSolution, {}, &witness));
  EXPECT_EQ(witness, sol(p, {"precipitation", "warm"}));
  EXPECT_THROW(relevance(p, b, v(p, "snows"), RelevanceMode::AnySolution), InvalidArgument);
}

TEST_P(Queries, RelevanceMatchesOracleOnCorpus) {
  for (const auto& g : testing::corpus(GetParam(), 60)) {
    auto all = oracle_solve(g.instance);
    auto minimal = oracle_subset_minimal(g.instance);
    for (Var h : g.instance.hyps()) {
      auto has = [&](const std::vector<Solution>& list) {
        return std::any_of(list.begin(), list.end(), [&](const Solution& s) { return s.contains(h); });
      };
      EXPECT_EQ(relevance(g.instance, g.planted, h, RelevanceMode::AnySolution), has(all));
      EXPECT_EQ(relevance(g.instance, g.planted, h, RelevanceMode::MinimalSolution), has(minimal));
    }
  }
}

TEST_P(Queries, FindSolution) {
  auto p = ex();
  auto s = find_solution(p, bd(p, {"snows"}, GetParam()));
  ASSERT_TRUE(s);
  EXPECT_TRUE(oracle_is_solution(p, *s));
  EXPECT_TRUE(check_solution(p, bd(p, {"snows"}, GetParam()), *s));
}

TEST_P(Queries, EnumeratorCountsCalls) {
  auto p = ex();
  EncodeOptions o;
  o.decoupled = true;
  SolutionEnumerator it(encode_solv(p, bd(p, {"snows"}, GetParam()), o), SolverConfig{});
  std::size_t found = 0;
  while (it.next()) ++found;
  EXPECT_EQ(found, 5u);
  EXPECT_EQ(it.solver_calls(), 6u);
  EXPECT_FALSE(it.next());
  EXPECT_EQ(it.solver_calls(), 6u);
}

INSTANTIATE_TEST_SUITE_P(BothClasses, Queries, ::testing::Values(BaseClass::Horn, BaseClass::Krom),
                         [](const auto& info) { return std::string(to_string(info.param)); });

}  // namespace
}  // namespace abd
