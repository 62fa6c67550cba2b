#include <gtest/gtest.h>

#include "abd/backdoor.hpp"
#include "abd/error.hpp"
#include "fixtures.hpp"
#include "truth_table.hpp"

namespace abd {
namespace {

using testing::ex;
using testing::v;

TEST(Verify, Example) {
  auto p = ex();
  const std::vector<Var> snows{v(p, "snows")}, warm{v(p, "warm")};
  EXPECT_TRUE(verify_strong_backdoor(p.theory(), snows, BaseClass::Horn));
  EXPECT_TRUE(verify_strong_backdoor(p.theory(), snows, BaseClass::Krom));
  EXPECT_FALSE(verify_strong_backdoor(p.theory(), warm, BaseClass::Horn));
}

TEST(Verify, SizeCap) {
  Cnf phi(30);
  std::vector<Var> big;
  for (std::uint32_t i = 0; i < 25; ++i) big.emplace_back(i);
  EXPECT_THROW(verify_strong_backdoor(phi, big, BaseClass::Horn), ResourceLimit);
}

TEST(Detect, ExampleFollowsTheTieBreak) {
  auto p = ex();
  // The only violating group is {snows, rains} (Horn) resp. {snows, rains,
  // precipitation} (Krom); snows has the smallest index.
  EXPECT_EQ(detect_horn_backdoor(p.theory(), 1), std::vector<Var>{v(p, "snows")});
  EXPECT_EQ(detect_krom_backdoor(p.theory(), 1), std::vector<Var>{v(p, "snows")});
  EXPECT_FALSE(detect_horn_backdoor(p.theory(), 0));
  EXPECT_EQ(smallest_backdoor(p.theory(), BaseClass::Horn, 5).variables.size(), 1u);
  EXPECT_EQ(smallest_backdoor(p.theory(), BaseClass::Krom, 5).variables.size(), 1u);
}

TEST(Detect, TrivialCases) {
  const Var a(0), b(1), c(2), d(3), e(4), f(5);
  Cnf horn(3, {Clause{Lit::neg(a), Lit::pos(b)}});
  EXPECT_EQ(detect_horn_backdoor(horn, 0), std::vector<Var>{});
  EXPECT_EQ(smallest_backdoor(horn, BaseClass::Horn, 3).variables.size(), 0u);
  Cnf two_edges(4, {Clause{Lit::pos(a), Lit::pos(b)}, Clause{Lit::pos(c), Lit::pos(d)}});
  EXPECT_FALSE(detect_horn_backdoor(two_edges, 1));
  Cnf two_triples(6, {Clause{Lit::pos(a), Lit::pos(b), Lit::pos(c)}, Clause{Lit::pos(d), Lit::pos(e), Lit::pos(f)}});
  EXPECT_FALSE(detect_krom_backdoor(two_triples, 1));
  EXPECT_EQ(detect_krom_backdoor(Cnf(2, {Clause{Lit::pos(a), Lit::pos(b)}}), 0), std::vector<Var>{});
  EXPECT_THROW(smallest_backdoor(two_triples, BaseClass::Krom, 1), BackdoorError);
}

std::vector<std::vector<Var>> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<std::vector<Var>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) continue;
    std::vector<Var> s;
    for (std::uint32_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) s.emplace_back(i);
    out.push_back(s);
  }
  return out;
}

class DetectorProperties : public ::testing::TestWithParam<BaseClass> {};

TEST_P(DetectorProperties, SoundAndCompleteUpToBudget) {
  const BaseClass cls = GetParam();
  testing::TestRng rng(cls == BaseClass::Horn ? 41 : 43);
  for (int round = 0; round < 120; ++round) {
    const std::size_t n = 3 + rng.below(6);
    Cnf phi = testing::random_cnf(rng, n, 2 + rng.below(6), 4);
    for (std::size_t k = 0; k <= 3; ++k) {
      auto found = cls == BaseClass::Horn ? detect_horn_backdoor(phi, k) : detect_krom_backdoor(phi, k);
      bool exists = false;
      for (const auto& s : subsets_up_to(n, k)) exists = exists || verify_strong_backdoor(phi, s, cls);
      EXPECT_EQ(found.has_value(), exists);
      if (found) {
        EXPECT_LE(found->size(), k);
        EXPECT_TRUE(verify_strong_backdoor(phi, *found, cls));
      }
    }
  }
}

TEST_P(DetectorProperties, StructuralCharacterisationMatchesDefinition) {
  const BaseClass cls = GetParam();
  testing::TestRng rng(cls == BaseClass::Horn ? 51 : 53);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 3 + rng.below(5);
    Cnf phi = testing::random_cnf(rng, n, 1 + rng.below(6), 4);
    for (const auto& s : subsets_up_to(n, n)) {
      bool structural = true;
      for (const auto& c : phi.clauses()) {
        if (c.is_tautological()) continue;
        std::size_t outside = 0;
        for (Lit l : c) {
          if (std::binary_search(s.begin(), s.end(), l.var())) continue;
          if (cls == BaseClass::Krom || l.positive()) ++outside;
        }
        structural = structural && outside <= (cls == BaseClass::Horn ? 1u : 2u);
      }
      EXPECT_EQ(structural, verify_strong_backdoor(phi, s, cls));
    }
  }
}

TEST_P(DetectorProperties, SupersetsVerify) {
  const BaseClass cls = GetParam();
  testing::TestRng rng(61);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 4 + rng.below(4);
    Cnf phi = testing::random_cnf(rng, n, 5, 4);
    auto found = smallest_backdoor(phi, cls, n);
    for (const auto& s : subsets_up_to(n, n)) {
      if (std::includes(s.begin(), s.end(), found.variables.begin(), found.variables.end()))
        EXPECT_TRUE(verify_strong_backdoor(phi, s, cls));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(BothClasses, DetectorProperties, ::testing::Values(BaseClass::Horn, BaseClass::Krom),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(PrepareBackdoor, PrunesVariablesOutsideTheTheory) {
  auto p = parse_instance("var a b c z\nhyp a\nman c\nclause a b c\n");
  std::vector<Var> pruned;
  auto b = prepare_backdoor(p, {Var(3), Var(1), Var(0), Var(0)}, BaseClass::Horn, &pruned);
  EXPECT_EQ(b.variables, (std::vector<Var>{Var(0), Var(1)}));
  EXPECT_EQ(pruned, std::vector<Var>{Var(3)});
  EXPECT_THROW(prepare_backdoor(p, {Var(3)}, BaseClass::Horn), BackdoorError);
}

TEST(ForEachAssignment, BinaryCountingAndForcedValues) {
  std::vector<Var> b{Var(1), Var(4)};
  std::vector<std::pair<bool, bool>> seen;
  for_each_backdoor_assignment(5, b, {}, [&](std::size_t, const PartialAssignment& tau) {
    seen.emplace_back(*tau.get(Var(1)), *tau.get(Var(4)));
  });
  EXPECT_EQ(seen, (std::vector<std::pair<bool, bool>>{{false, false}, {true, false}, {false, true}, {true, true}}));
  std::vector<Var> forced{Var(4)};
  std::size_t count = 0;
  for_each_backdoor_assignment(5, b, forced, [&](std::size_t, const PartialAssignment& tau) {
    ++count;
    EXPECT_TRUE(*tau.get(Var(4)));
  });
  EXPECT_EQ(count, 2u);
}

}  // namespace
}  // namespace abd
