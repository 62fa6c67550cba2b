#pragma once

// Horn base class: least models, the backdoor-based solution checker, the
// 2^{|B|+|H|} brute-force solver and the SAT encoding that simulates
// least-model computation for every assignment of the backdoor.

#include <optional>
#include <span>
#include <vector>

#include "abd/backdoor.hpp"
#include "abd/encoding.hpp"
#include "abd/instance.hpp"

namespace abd {

struct HornRule {
  Var head;
  std::vector<Var> body;  // empty for a fact
};

// Rules (exactly one positive literal) and constraints (none, including the
// empty clause). Tautological clauses are dropped.
struct HornDecomposition {
  std::vector<HornRule> rules;
  std::vector<Clause> constraints;
  bool has_empty_clause() const;
};

// Throws InvalidArgument when phi is not Horn.
HornDecomposition decompose_horn(const Cnf& phi);

// Least model of phi plus the facts, or nullopt if a constraint is violated.
// Linear-time counter propagation. Throws InvalidArgument when phi is not Horn.
std::optional<std::vector<Var>> least_model(const Cnf& phi, std::span<const Var> facts);

// Number of synchronous propagation rounds that change something before the
// fixed point is reached (the quantity the encoding unrolls).
std::size_t least_model_rounds(const Cnf& phi, std::span<const Var> facts);

// Solution check through the least models of T[tau] ∪ S for tau over B with
// every member of S ∩ B set to true. Throws BackdoorError when B is not a
// strong Horn backdoor of T, InvalidArgument when S is not a subset of H.
bool check_solution_horn(const AbductionInstance& p, const BackdoorSet& b, const Solution& s);

// First accepted candidate in binary-counting order over H (bit i = i-th
// hypothesis), or nullopt.
std::optional<Solution> solve_bruteforce_horn(const AbductionInstance& p, const BackdoorSet& b);

// T ∧ for every subset B_i of B: guard_i -> (check_i -> man_i), with the
// least model of T[B_i] ∪ S unrolled over min(|T|, |V|) steps in fresh step
// variables. The step definitions are asserted unconditionally; with
// options.strict_paper they sit in the antecedent next to check_i instead,
// which leaves them unconstrained and makes the formula too weak.
Encoding encode_horn_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options = {});

// Adds the per-assignment entailment part to `builder` (shared with the
// subset-minimal encoder). Candidate hypotheses are read through
// builder.candidate(). Returns the number of steps p.
std::size_t add_horn_entailment(EncodingBuilder& builder, const AbductionInstance& p, const BackdoorSet& b,
                                bool strict_paper);

}  // namespace abd
