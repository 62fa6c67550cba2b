#include "abd/horn.hpp"

#include <algorithm>

#include "abd/error.hpp"

namespace abd {

bool HornDecomposition::has_empty_clause() const {
  return std::any_of(constraints.begin(), constraints.end(), [](const Clause& c) { return c.empty(); });
}

HornDecomposition decompose_horn(const Cnf& phi) {
  HornDecomposition out;
  for (const auto& c : phi.clauses()) {
    if (c.is_tautological()) continue;
    const std::size_t positives = c.positive_count();
    if (positives > 1) throw InvalidArgument("decompose_horn: clause with " + std::to_string(positives) +
                                             " positive literals");
    if (positives == 0) {
      out.constraints.push_back(c);
      continue;
    }
    HornRule rule;
    for (Lit l : c) {
      if (l.positive()) {
        rule.head = l.var();
      } else {
        rule.body.push_back(l.var());
      }
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

std::optional<std::vector<Var>> least_model(const Cnf& phi, std::span<const Var> facts) {
  const HornDecomposition dec = decompose_horn(phi);
  const std::size_t n = std::max<std::size_t>(phi.num_vars(), facts.empty() ? 0 : std::max_element(facts.begin(), facts.end())->index() + 1);

  std::vector<bool> value(n, false);
  std::vector<std::size_t> missing(dec.rules.size());
  std::vector<std::vector<std::size_t>> watching(n);
  std::vector<Var> queue;

  auto make_true = [&](Var v) {
    if (!value[v.index()]) {
      value[v.index()] = true;
      queue.push_back(v);
    }
  };
  for (Var f : facts) make_true(f);
  for (std::size_t r = 0; r < dec.rules.size(); ++r) {
    missing[r] = dec.rules[r].body.size();
    for (Var b : dec.rules[r].body) watching[b.index()].push_back(r);
    if (missing[r] == 0) make_true(dec.rules[r].head);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t r : watching[queue[q].index()]) {
      if (--missing[r] == 0) make_true(dec.rules[r].head);
    }
  }

  for (const auto& c : dec.constraints) {
    if (std::all_of(c.begin(), c.end(), [&](Lit l) { return value[l.var().index()]; })) return std::nullopt;
  }
  std::vector<Var> model;
  for (std::uint32_t v = 0; v < n; ++v)
    if (value[v]) model.emplace_back(v);
  return model;
}

std::size_t least_model_rounds(const Cnf& phi, std::span<const Var> facts) {
  const HornDecomposition dec = decompose_horn(phi);
  std::vector<bool> value(phi.num_vars(), false);
  for (Var f : facts) value[f.index()] = true;
  std::size_t rounds = 0;
  for (;;) {
    std::vector<bool> next = value;
    for (const auto& r : dec.rules) {
      if (std::all_of(r.body.begin(), r.body.end(), [&](Var b) { return value[b.index()]; }))
        next[r.head.index()] = true;
    }
    if (next == value) return rounds;
    value = std::move(next);
    ++rounds;
  }
}

namespace {

void ensure_candidate(const AbductionInstance& p, const Solution& s) {
  for (Var h : s.hypotheses())
    if (!p.is_hyp(h)) throw InvalidArgument("candidate '" + p.name(h) + "' is not a hypothesis");
}

std::vector<Var> outside(std::span<const Var> vars, std::span<const Var> backdoor) {
  std::vector<Var> out;
  for (Var v : vars)
    if (!std::binary_search(backdoor.begin(), backdoor.end(), v)) out.push_back(v);
  return out;
}

}  // namespace

bool check_solution_horn(const AbductionInstance& p, const BackdoorSet& b, const Solution& s) {
  ensure_backdoor(p, b, BaseClass::Horn);
  ensure_candidate(p, s);
  const auto facts = outside(s.hypotheses(), b.variables);

  bool consistent = false;
  bool entailment = true;
  for_each_backdoor_assignment(
      p.num_vars(), b.variables, s.hypotheses(), [&](std::size_t, const PartialAssignment& tau) {
        if (!entailment) return;
        auto model = least_model(reduct(p.theory(), tau), facts);
        if (!model) return;
        consistent = true;
        for (Var m : p.mans()) {
          bool holds = tau.assigned(m) ? *tau.get(m) : std::binary_search(model->begin(), model->end(), m);
          if (!holds) {
            entailment = false;
            return;
          }
        }
      });
  return consistent && entailment;
}

std::optional<Solution> solve_bruteforce_horn(const AbductionInstance& p, const BackdoorSet& b) {
  ensure_backdoor(p, b, BaseClass::Horn);
  const auto hyps = p.hyps();
  if (hyps.size() >= 63) throw ResourceLimit("solve_bruteforce_horn: too many hypotheses");
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << hyps.size()); ++subset) {
    std::vector<Var> chosen;
    for (std::size_t i = 0; i < hyps.size(); ++i)
      if ((subset >> i) & 1u) chosen.push_back(hyps[i]);
    Solution s(std::move(chosen));
    if (check_solution_horn(p, b, s)) return s;
  }
  return std::nullopt;
}

std::size_t add_horn_entailment(EncodingBuilder& builder, const AbductionInstance& p, const BackdoorSet& b,
                                bool strict_paper) {
  const std::size_t n = p.num_vars();
  const std::size_t steps = std::min(p.theory().size(), n);
  std::vector<bool> in_backdoor(n, false);
  for (Var v : b.variables) in_backdoor[v.index()] = true;

  for_each_backdoor_assignment(n, b.variables, {}, [&](std::size_t i, const PartialAssignment& tau) {
    const Cnf reduced = reduct(p.theory(), tau);
    if (!is_horn(reduced)) throw BackdoorError("reduct under a backdoor assignment is not Horn");
    const HornDecomposition dec = decompose_horn(reduced);

    std::vector<Formula> guard;
    for (Var h : p.hyps())
      if (in_backdoor[h.index()] && !*tau.get(h)) guard.push_back(!builder.candidate(h));

    // u_i^0: candidate hypotheses true, everything else false. Backdoor
    // variables never occur in the reduct, so their chains are not built.
    std::vector<Formula> current(n, Formula::constant(false));
    for (Var h : p.hyps())
      if (!in_backdoor[h.index()]) current[h.index()] = builder.candidate(h);

    std::vector<std::vector<const HornRule*>> by_head(n);
    for (const auto& r : dec.rules) by_head[r.head.index()].push_back(&r);

    std::vector<Formula> definitions;
    for (std::size_t j = 1; j <= steps; ++j) {
      std::vector<Formula> next = current;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (in_backdoor[v] || by_head[v].empty()) continue;
        std::vector<Formula> options{current[v]};
        for (const HornRule* r : by_head[v]) {
          std::vector<Formula> body;
          for (Var x : r->body) body.push_back(current[x.index()]);
          options.push_back(Formula::conj(std::move(body)));
        }
        Formula value = Formula::disj(std::move(options));
        if (value.is_constant() || value.is_literal()) {
          next[v] = value;
          continue;
        }
        Var u = builder.add_var({RoleKind::Step, v, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        definitions.push_back(Formula::iff(Formula::atom(u), value));
        next[v] = Formula::atom(u);
      }
      current = std::move(next);
    }

    Formula check = Formula::constant(true);
    if (dec.has_empty_clause()) {
      check = Formula::constant(false);
    } else {
      std::vector<Formula> constraints;
      for (const auto& c : dec.constraints) {
        std::vector<Formula> any_false;
        for (Lit l : c) any_false.push_back(!current[l.var().index()]);
        constraints.push_back(Formula::disj(std::move(any_false)));
      }
      check = Formula::conj(std::move(constraints));
    }

    std::vector<Formula> man;
    for (Var m : p.mans())
      man.push_back(in_backdoor[m.index()] ? Formula::constant(*tau.get(m)) : current[m.index()]);
    Formula manifest = Formula::conj(std::move(man));
    Formula guard_f = Formula::conj(std::move(guard));

    if (strict_paper) {
      definitions.push_back(check);
      builder.require(Formula::implies(guard_f, Formula::implies(Formula::conj(std::move(definitions)), manifest)));
    } else {
      for (auto& d : definitions) builder.require(std::move(d));
      builder.require(Formula::implies(guard_f, Formula::implies(check, manifest)));
    }
  });
  return steps;
}

Encoding encode_horn_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options) {
  if (b.variables.size() > options.max_backdoor)
    throw ResourceLimit("backdoor of size " + std::to_string(b.variables.size()) + " exceeds the encoding ceiling " +
                        std::to_string(options.max_backdoor));
  ensure_backdoor(p, b, BaseClass::Horn);
  EncodingBuilder builder(p);
  if (options.decoupled) builder.add_selectors();
  builder.require_theory();
  EncodingStats stats;
  stats.backdoor_size = b.variables.size();
  stats.assignments = std::size_t{1} << b.variables.size();
  stats.steps = add_horn_entailment(builder, p, b, options.strict_paper);
  return builder.finish(options.decoupled ? Projection::Selectors : Projection::Hypotheses, stats);
}

}  // namespace abd
