#include "abd/krom.hpp"

#include <algorithm>

#include "abd/error.hpp"

namespace abd {

namespace {

void ensure_krom(const Cnf& t, const char* where) {
  if (!is_krom(t)) throw InvalidArgument(std::string(where) + ": formula is not Krom");
}

Cnf with_units(const Cnf& t, std::span<const Lit> units) {
  Cnf out = t;
  for (Lit l : units) out.add(Clause{l});
  return out;
}

bool refutable(const Cnf& t) {
  if (t.has_empty_clause()) return true;
  return resolution_closure(t).contains(Clause{});
}

}  // namespace

bool krom_entails(const Cnf& t, std::span<const Lit> assumptions, Lit goal) {
  ensure_krom(t, "krom_entails");
  Cnf query = with_units(t, assumptions);
  query.add(Clause{~goal});
  return refutable(query);
}

bool krom_consistent(const Cnf& t, std::span<const Lit> assumptions) {
  ensure_krom(t, "krom_consistent");
  return !refutable(with_units(t, assumptions));
}

TrimResSet TrimResSet::empty_clause() {
  TrimResSet out;
  out.empty_clause_ = true;
  return out;
}

bool TrimResSet::contains(const Clause& c) const {
  if (empty_clause_) return c.empty();
  return clauses_.contains(c);
}

std::vector<Clause> TrimResSet::sorted() const {
  if (empty_clause_) return {Clause{}};
  std::vector<Clause> out(clauses_.begin(), clauses_.end());
  std::sort(out.begin(), out.end());
  return out;
}

TrimResSet trimres(const AbductionInstance& p, const PartialAssignment& tau) {
  const Cnf reduced = reduct(p.theory(), tau);
  ensure_krom(reduced, "trimres");
  ClauseSet closure = resolution_closure(reduced);
  if (closure.contains(Clause{})) return TrimResSet::empty_clause();

  std::vector<bool> in_x(p.num_vars(), false);
  for (Var h : p.hyps()) in_x[h.index()] = !tau.assigned(h);
  for (Var m : p.mans()) in_x[m.index()] = !tau.assigned(m);

  ClauseSet kept;
  for (const auto& c : closure) {
    if (c.is_tautological()) continue;
    if (std::all_of(c.begin(), c.end(), [&](Lit l) { return in_x[l.var().index()]; })) kept.insert(c);
  }
  return TrimResSet(std::move(kept));
}

bool check_solution_krom(const AbductionInstance& p, const BackdoorSet& b, const Solution& s, bool strict_paper) {
  ensure_backdoor(p, b, BaseClass::Krom);
  std::vector<Lit> units;
  for (Var h : s.hypotheses()) {
    if (!p.is_hyp(h)) throw InvalidArgument("candidate '" + p.name(h) + "' is not a hypothesis");
    if (!std::binary_search(b.variables.begin(), b.variables.end(), h)) units.push_back(Lit::pos(h));
  }

  bool consistent = false;
  bool entailment = true;
  for_each_backdoor_assignment(p.num_vars(), b.variables, s.hypotheses(), [&](std::size_t, const PartialAssignment& tau) {
    if (!entailment) return;
    const Cnf reduced = reduct(p.theory(), tau);
    const bool here = krom_consistent(reduced, units);
    consistent = consistent || here;

    const bool mans_hold =
        std::none_of(p.mans().begin(), p.mans().end(), [&](Var m) { return tau.get(m) == std::optional<bool>(false); });
    if (!mans_hold) {
      if (here) entailment = false;
      return;
    }
    if (!here && !strict_paper) return;
    for (Var m : p.mans()) {
      if (tau.assigned(m)) continue;
      bool entailed = krom_entails(reduced, {}, Lit::pos(m));
      for (std::size_t i = 0; !entailed && i < units.size(); ++i)
        entailed = krom_entails(reduced, std::span<const Lit>(&units[i], 1), Lit::pos(m));
      if (!entailed) {
        entailment = false;
        return;
      }
    }
  });
  return consistent && entailment;
}

void add_krom_entailment(EncodingBuilder& builder, const AbductionInstance& p, const BackdoorSet& b,
                         bool strict_paper) {
  const auto hyps = p.hyps();
  for_each_backdoor_assignment(p.num_vars(), b.variables, {}, [&](std::size_t, const PartialAssignment& tau) {
    const TrimResSet tr = trimres(p, tau);
    auto constant = [&](Clause c) { return Formula::constant(tr.contains(c)); };

    std::vector<Formula> guard;
    for (Var h : hyps)
      if (tau.get(h) == std::optional<bool>(false)) guard.push_back(!builder.candidate(h));

    std::vector<Formula> inconsistent{constant(Clause{})};
    for (std::size_t a = 0; a < hyps.size(); ++a) {
      inconsistent.push_back(builder.candidate(hyps[a]) && constant(Clause{Lit::neg(hyps[a])}));
      for (std::size_t c = a + 1; c < hyps.size(); ++c)
        inconsistent.push_back(Formula::conj({builder.candidate(hyps[a]), builder.candidate(hyps[c]),
                                              constant(Clause{Lit::neg(hyps[a]), Lit::neg(hyps[c])})}));
    }
    Formula psi = Formula::disj(std::move(inconsistent));

    bool mans_in_b_true = true;
    std::vector<Formula> entailed;
    for (Var m : p.mans()) {
      if (auto value = tau.get(m)) {
        mans_in_b_true = mans_in_b_true && *value;
        continue;
      }
      std::vector<Formula> witnesses{constant(Clause{Lit::pos(m)})};
      for (Var h : hyps) witnesses.push_back(builder.candidate(h) && constant(Clause{Lit::neg(h), Lit::pos(m)}));
      entailed.push_back(Formula::disj(std::move(witnesses)));
    }
    Formula phi = Formula::conj(std::move(entailed));

    Formula body = mans_in_b_true ? (strict_paper ? phi : phi || psi) : psi;
    builder.require(Formula::implies(Formula::conj(std::move(guard)), body));
  });
}

Encoding encode_krom_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options) {
  if (b.variables.size() > options.max_backdoor)
    throw ResourceLimit("backdoor of size " + std::to_string(b.variables.size()) + " exceeds the encoding ceiling " +
                        std::to_string(options.max_backdoor));
  ensure_backdoor(p, b, BaseClass::Krom);
  EncodingBuilder builder(p);
  if (options.decoupled) builder.add_selectors();
  builder.require_theory();
  add_krom_entailment(builder, p, b, options.strict_paper);
  EncodingStats stats;
  stats.backdoor_size = b.variables.size();
  stats.assignments = std::size_t{1} << b.variables.size();
  return builder.finish(options.decoupled ? Projection::Selectors : Projection::Hypotheses, stats);
}

}  // namespace abd
