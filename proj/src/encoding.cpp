#include "abd/encoding.hpp"

#include <algorithm>

#include "abd/error.hpp"

namespace abd {

std::string_view to_string(RoleKind kind) {
  switch (kind) {
    case RoleKind::Theory:
      return "theory";
    case RoleKind::Selector:
      return "selector";
    case RoleKind::Step:
      return "step";
    case RoleKind::Copy:
      return "copy";
    case RoleKind::Auxiliary:
      return "auxiliary";
  }
  return "auxiliary";
}

EncodingBuilder::EncodingBuilder(const AbductionInstance& p) : p_(p) {
  roles_.reserve(p.num_vars());
  for (std::uint32_t v = 0; v < p.num_vars(); ++v) roles_.push_back({RoleKind::Theory, v, 0, 0});
}

Var EncodingBuilder::add_var(VarRole role) {
  roles_.push_back(role);
  return Var(static_cast<std::uint32_t>(roles_.size() - 1));
}

void EncodingBuilder::add_selectors() {
  if (!selectors_.empty()) return;
  for (Var h : p_.hyps()) selectors_.push_back(add_var({RoleKind::Selector, h.index(), 0, 0}));
  // s_h -> h
  for (std::size_t i = 0; i < selectors_.size(); ++i)
    require_clause(Clause{Lit::neg(selectors_[i]), Lit::pos(p_.hyps()[i])});
}

Var EncodingBuilder::selector(Var h) const {
  auto hyps = p_.hyps();
  auto it = std::lower_bound(hyps.begin(), hyps.end(), h);
  if (it == hyps.end() || *it != h || selectors_.empty())
    throw InvalidArgument("no selector for '" + p_.name(h) + "'");
  return selectors_[static_cast<std::size_t>(it - hyps.begin())];
}

Formula EncodingBuilder::candidate(Var h) const {
  return Formula::atom(selectors_.empty() ? theory(h) : selector(h));
}

void EncodingBuilder::require_theory() {
  for (const auto& c : p_.theory().clauses()) require_clause(c);
}

Encoding EncodingBuilder::finish(Projection projection, EncodingStats stats) {
  Encoding enc;
  enc.cnf.reserve_vars(roles_.size());
  for (auto& c : clauses_) enc.cnf.add(std::move(c));
  clauses_.clear();
  TseitinEncoder tseitin(enc.cnf, [this, &enc] {
    Var v = add_var({RoleKind::Auxiliary, 0, 0, 0});
    enc.cnf.reserve_vars(roles_.size());
    return v;
  });
  for (const auto& f : conjuncts_) tseitin.assert_formula(f);
  conjuncts_.clear();

  enc.roles = roles_;
  enc.cnf.reserve_vars(enc.roles.size());
  enc.projection = projection;
  enc.hypotheses.assign(p_.hyps().begin(), p_.hyps().end());
  for (std::size_t i = 0; i < enc.hypotheses.size(); ++i) {
    Var h = enc.hypotheses[i];
    enc.projection_vars.push_back(projection == Projection::Selectors ? selector(h) : theory(h));
  }

  stats.variables = enc.cnf.num_vars();
  stats.clauses = enc.cnf.size();
  stats.literals = 0;
  for (const auto& c : enc.cnf.clauses()) stats.literals += c.size();
  enc.stats = stats;
  return enc;
}

Solution decode_solution(const Encoding& enc, const std::vector<bool>& model) {
  if (model.size() < enc.cnf.num_vars()) throw InvalidArgument("decode: model does not cover the encoding");
  for (const auto& c : enc.cnf.clauses()) {
    if (c.is_tautological()) continue;
    bool sat = std::any_of(c.begin(), c.end(), [&](Lit l) { return model[l.var().index()] == l.positive(); });
    if (!sat) throw InvalidArgument("decode: assignment is not a model of the encoding");
  }
  std::vector<Var> chosen;
  for (std::size_t i = 0; i < enc.hypotheses.size(); ++i)
    if (model[enc.projection_vars[i].index()]) chosen.push_back(enc.hypotheses[i]);
  return Solution(std::move(chosen));
}

Var add_auxiliary(Encoding& enc) {
  enc.roles.push_back({RoleKind::Auxiliary, 0, 0, 0});
  Var v(static_cast<std::uint32_t>(enc.roles.size() - 1));
  enc.cnf.reserve_vars(enc.roles.size());
  return v;
}

void add_projection_unit(Encoding& enc, Var hypothesis, bool value) {
  auto it = std::find(enc.hypotheses.begin(), enc.hypotheses.end(), hypothesis);
  if (it == enc.hypotheses.end()) throw InvalidArgument("not a hypothesis of the encoded instance");
  Var x = enc.projection_vars[static_cast<std::size_t>(it - enc.hypotheses.begin())];
  enc.cnf.add(Clause{Lit(x, value)});
}

}  // namespace abd
