#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abd/cnf.hpp"
#include "abd/formula.hpp"
#include "abd/instance.hpp"

namespace abd {

enum class RoleKind : std::uint8_t {
  Theory,     // a variable v of V
  Selector,   // s_h, "h is in the solution"
  Step,       // u_i^j[v]: value of v after step j of the i-th least-model run
  Copy,       // v^h: copy of v in the non-entailment witness for h
  Auxiliary,  // Tseitin or counter auxiliary
};

std::string_view to_string(RoleKind kind);

struct VarRole {
  RoleKind kind = RoleKind::Auxiliary;
  std::uint32_t var = 0;    // theory variable (Theory, Selector, Step, Copy)
  std::uint32_t block = 0;  // Step: assignment index i; Copy: hypothesis h
  std::uint32_t step = 0;   // Step: j

  friend bool operator==(const VarRole&, const VarRole&) = default;
};

// Which CNF variables a solution is read from.
enum class Projection { Hypotheses, Selectors };

struct EncodingStats {
  std::size_t variables = 0;
  std::size_t clauses = 0;
  std::size_t literals = 0;
  std::size_t backdoor_size = 0;
  std::size_t assignments = 0;  // 2^|B|
  std::size_t steps = 0;        // p, Horn only
};

struct Encoding {
  Cnf cnf;
  std::vector<VarRole> roles;  // one per CNF variable
  Projection projection = Projection::Hypotheses;
  std::vector<Var> hypotheses;       // H in instance order
  std::vector<Var> projection_vars;  // CNF variable read for hypotheses[i]
  EncodingStats stats;
};

struct EncodeOptions {
  // Represent the candidate solution by selector variables s_h (with s_h -> h)
  // instead of the hypothesis variables themselves. Needed for enumeration.
  bool decoupled = false;
  // Emit the unrepaired formulas, gaps included (see the individual
  // encoders). For comparison experiments only.
  bool strict_paper = false;
  std::size_t max_backdoor = 16;
};

// Holds the variable pool and the top-level conjuncts while an encoder runs.
// The first |V| CNF variables are the theory variables, in instance order.
class EncodingBuilder {
 public:
  explicit EncodingBuilder(const AbductionInstance& p);

  Var theory(Var v) const { return v; }
  Var add_var(VarRole role);
  // s_h for every h in H, allocated right after the theory variables.
  void add_selectors();
  bool has_selectors() const { return !selectors_.empty(); }
  Var selector(Var h) const;
  // The CNF atom carrying "h is in the candidate solution": s_h when
  // selectors exist, otherwise h itself.
  Formula candidate(Var h) const;

  void require(Formula f) { conjuncts_.push_back(std::move(f)); }
  // Adds the clauses of T over the theory variables.
  void require_theory();
  void require_clause(Clause c) { clauses_.push_back(std::move(c)); }

  Encoding finish(Projection projection, EncodingStats stats);

 private:
  const AbductionInstance& p_;
  std::vector<VarRole> roles_;
  std::vector<Var> selectors_;  // indexed by position in H
  std::vector<Formula> conjuncts_;
  std::vector<Clause> clauses_;
};

// Reads the projection. Throws InvalidArgument when `model` does not satisfy
// enc.cnf (model is indexed by CNF variable).
Solution decode_solution(const Encoding& enc, const std::vector<bool>& model);

// Allocates a fresh auxiliary CNF variable in an already finished encoding.
Var add_auxiliary(Encoding& enc);

// Conjoins the unit clause selecting/deselecting a projected hypothesis.
void add_projection_unit(Encoding& enc, Var hypothesis, bool value);

}  // namespace abd
