#pragma once

// Test-only brute force over total assignments, bit v = value of variable v.

#include <cstdint>
#include <functional>
#include <vector>

#include "abd/cnf.hpp"
#include "abd/formula.hpp"

namespace abd::testing {

inline bool satisfied_by(const Clause& c, std::uint64_t bits) {
  if (c.is_tautological()) return true;
  for (Lit l : c)
    if (((bits >> l.var().index()) & 1u) == static_cast<std::uint64_t>(l.positive())) return true;
  return false;
}

inline bool satisfied_by(const Cnf& phi, std::uint64_t bits) {
  for (const auto& c : phi.clauses())
    if (!satisfied_by(c, bits)) return false;
  return true;
}

inline void for_each_assignment(std::size_t n, const std::function<void(std::uint64_t)>& visit) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) visit(bits);
}

inline bool tt_satisfiable(const Cnf& phi) {
  bool found = false;
  for_each_assignment(phi.num_vars(), [&](std::uint64_t bits) { found = found || satisfied_by(phi, bits); });
  return found;
}

inline bool tt_entails(const Cnf& phi, const Clause& c) {
  bool ok = true;
  for_each_assignment(phi.num_vars(), [&](std::uint64_t bits) {
    if (ok && satisfied_by(phi, bits) && !satisfied_by(c, bits)) ok = false;
  });
  return ok;
}

inline PartialAssignment total(std::size_t n, std::uint64_t bits) { return PartialAssignment::from_bits(n, bits); }

inline bool tt_satisfiable(const Formula& f, std::size_t n) {
  bool found = false;
  for_each_assignment(n, [&](std::uint64_t bits) { found = found || f.eval(total(n, bits)); });
  return found;
}

// Deterministic xorshift for property tests.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 1) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool coin() { return next() & 1u; }

 private:
  std::uint64_t state_;
};

inline Cnf random_cnf(TestRng& rng, std::size_t vars, std::size_t clauses, std::size_t max_width) {
  Cnf phi(vars);
  for (std::size_t i = 0; i < clauses; ++i) {
    std::vector<Lit> lits;
    const std::size_t w = rng.below(max_width + 1);
    for (std::size_t j = 0; j < w; ++j) lits.emplace_back(Var(static_cast<std::uint32_t>(rng.below(vars))), rng.coin());
    phi.add(Clause(std::move(lits)));
  }
  return phi;
}

inline Formula random_formula(TestRng& rng, std::size_t vars, std::size_t depth) {
  if (depth == 0 || rng.below(4) == 0) {
    if (rng.below(12) == 0) return Formula::constant(rng.coin());
    return Formula::literal(Lit(Var(static_cast<std::uint32_t>(rng.below(vars))), rng.coin()));
  }
  switch (rng.below(5)) {
    case 0:
      return !random_formula(rng, vars, depth - 1);
    case 1: {
      std::vector<Formula> kids;
      for (std::size_t i = 0, n = 2 + rng.below(2); i < n; ++i) kids.push_back(random_formula(rng, vars, depth - 1));
      return Formula::conj(std::move(kids));
    }
    case 2: {
      std::vector<Formula> kids;
      for (std::size_t i = 0, n = 2 + rng.below(2); i < n; ++i) kids.push_back(random_formula(rng, vars, depth - 1));
      return Formula::disj(std::move(kids));
    }
    case 3:
      return Formula::implies(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    default:
      return Formula::iff(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
  }
}

}  // namespace abd::testing
