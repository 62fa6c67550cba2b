#pragma once

// Krom base class: 2-CNF entailment by resolution, TrimRes, the backdoor
// solution checker and the TrimRes-driven SAT encoding.

#include <span>
#include <vector>

#include "abd/backdoor.hpp"
#include "abd/encoding.hpp"
#include "abd/instance.hpp"

namespace abd {

// T ∧ assumptions ⊨ goal, by resolution closure. Throws InvalidArgument when
// T is not Krom.
bool krom_entails(const Cnf& t, std::span<const Lit> assumptions, Lit goal);

// T ∧ assumptions is satisfiable.
bool krom_consistent(const Cnf& t, std::span<const Lit> assumptions);

// Res(T[tau]) restricted to clauses over (H ∪ M) \ var(tau), or {□}.
class TrimResSet {
 public:
  TrimResSet() = default;
  static TrimResSet empty_clause();
  explicit TrimResSet(ClauseSet clauses) : clauses_(std::move(clauses)) {}

  bool has_empty_clause() const { return empty_clause_; }
  bool contains(const Clause& c) const;
  std::size_t size() const { return empty_clause_ ? 1 : clauses_.size(); }
  std::vector<Clause> sorted() const;

 private:
  bool empty_clause_ = false;
  ClauseSet clauses_;
};

// Throws InvalidArgument when T[tau] is not Krom.
TrimResSet trimres(const AbductionInstance& p, const PartialAssignment& tau);

// Backdoor-driven solution check. Entailment of each manifestation is only
// tested for assignments under which T[tau] ∪ S is consistent; with
// `strict_paper` it is tested for every assignment, which rejects some
// solutions whose hypotheses are jointly inconsistent with T[tau].
bool check_solution_krom(const AbductionInstance& p, const BackdoorSet& b, const Solution& s,
                         bool strict_paper = false);

// T ∧ for every assignment tau_i over B: guard_i -> F_i, where F_i is the
// entailment witness phi_i (extended with the inconsistency witness psi_i
// unless options.strict_paper) when tau_i keeps all manifestations in B
// true, and psi_i otherwise. TrimRes membership is folded into constants.
Encoding encode_krom_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options = {});

void add_krom_entailment(EncodingBuilder& builder, const AbductionInstance& p, const BackdoorSet& b,
                         bool strict_paper);

}  // namespace abd
