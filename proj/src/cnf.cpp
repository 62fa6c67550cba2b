#include "abd/cnf.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "abd/error.hpp"

namespace abd {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::contains(Lit l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::is_tautological() const {
  // Complementary literals are adjacent under the canonical order.
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var()) return true;
  return false;
}

std::size_t Clause::positive_count() const {
  return static_cast<std::size_t>(std::count_if(lits_.begin(), lits_.end(), [](Lit l) { return l.positive(); }));
}

std::uint32_t Clause::var_bound() const { return lits_.empty() ? 0 : lits_.back().var().index() + 1; }

std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
  std::size_t h = c.size() * 0x9e3779b97f4a7c15ull;
  for (Lit l : c) h = (h ^ l.code()) * 0x100000001b3ull;
  return h;
}

Cnf::Cnf(std::size_t num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
  clauses_.reserve(clauses.size());
  for (auto& c : clauses) add(std::move(c));
}

void Cnf::add(Clause c) {
  num_vars_ = std::max<std::size_t>(num_vars_, c.var_bound());
  clauses_.push_back(std::move(c));
}

void Cnf::reserve_vars(std::size_t n) { num_vars_ = std::max(num_vars_, n); }

std::vector<Var> Cnf::occurring_vars() const {
  std::vector<bool> seen(num_vars_, false);
  for (const auto& c : clauses_)
    for (Lit l : c) seen[l.var().index()] = true;
  std::vector<Var> out;
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.emplace_back(i);
  return out;
}

bool Cnf::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

void PartialAssignment::set(Var v, bool value) {
  if (v.index() >= values_.size()) values_.resize(v.index() + 1, kUnassigned);
  values_[v.index()] = value ? 1 : 0;
}

void PartialAssignment::unset(Var v) {
  if (v.index() < values_.size()) values_[v.index()] = kUnassigned;
}

std::optional<bool> PartialAssignment::get(Var v) const {
  if (v.index() >= values_.size() || values_[v.index()] == kUnassigned) return std::nullopt;
  return values_[v.index()] == 1;
}

std::optional<bool> PartialAssignment::value(Lit l) const {
  auto v = get(l.var());
  if (!v) return std::nullopt;
  return *v == l.positive();
}

std::vector<Var> PartialAssignment::domain() const {
  std::vector<Var> out;
  for (std::uint32_t i = 0; i < values_.size(); ++i)
    if (values_[i] != kUnassigned) out.emplace_back(i);
  return out;
}

bool PartialAssignment::is_total_on(const Cnf& phi) const {
  for (const auto& c : phi.clauses())
    for (Lit l : c)
      if (!assigned(l.var())) return false;
  return true;
}

PartialAssignment PartialAssignment::from_bits(std::size_t universe, std::uint64_t bits) {
  PartialAssignment tau(universe);
  for (std::size_t i = 0; i < universe; ++i) tau.set(Var(static_cast<std::uint32_t>(i)), (bits >> i) & 1u);
  return tau;
}

Cnf reduct(const Cnf& phi, const PartialAssignment& tau) {
  Cnf out(phi.num_vars());
  for (const auto& c : phi.clauses()) {
    std::vector<Lit> rest;
    bool satisfied = false;
    for (Lit l : c) {
      auto v = tau.value(l);
      if (!v) {
        rest.push_back(l);
      } else if (*v) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.add(Clause(std::move(rest)));
  }
  return out;
}

bool is_horn(const Cnf& phi) {
  return std::all_of(phi.clauses().begin(), phi.clauses().end(),
                     [](const Clause& c) { return c.positive_count() <= 1 || c.is_tautological(); });
}

bool is_krom(const Cnf& phi) {
  return std::all_of(phi.clauses().begin(), phi.clauses().end(),
                     [](const Clause& c) { return c.size() <= 2 || c.is_tautological(); });
}

bool evaluate(const Cnf& phi, const PartialAssignment& tau) {
  if (!tau.is_total_on(phi)) throw InvalidArgument("evaluate: assignment is not total on var(phi)");
  for (const auto& c : phi.clauses()) {
    if (c.is_tautological()) continue;
    bool sat = std::any_of(c.begin(), c.end(), [&](Lit l) { return *tau.value(l); });
    if (!sat) return false;
  }
  return true;
}

namespace {

std::optional<Clause> resolve(const Clause& a, const Clause& b, Var pivot) {
  std::vector<Lit> lits;
  lits.reserve(a.size() + b.size());
  for (Lit l : a)
    if (l.var() != pivot) lits.push_back(l);
  for (Lit l : b)
    if (l.var() != pivot) lits.push_back(l);
  Clause r(std::move(lits));
  if (r.is_tautological()) return std::nullopt;
  return r;
}

}  // namespace

ClauseSet resolution_closure(const Cnf& phi, ClosureLimits limits) {
  ClauseSet closure;
  std::vector<Clause> store;
  std::unordered_map<Lit, std::vector<std::size_t>> occurs;
  std::deque<std::size_t> pending;

  auto insert = [&](Clause c) {
    if (c.is_tautological() || closure.contains(c)) return;
    if (closure.size() >= limits.max_clauses)
      throw ResourceLimit("resolution closure exceeds " + std::to_string(limits.max_clauses) + " clauses");
    closure.insert(c);
    std::size_t id = store.size();
    for (Lit l : c) occurs[l].push_back(id);
    store.push_back(std::move(c));
    pending.push_back(id);
  };

  for (const auto& c : phi.clauses()) insert(c);

  while (!pending.empty()) {
    std::size_t id = pending.front();
    pending.pop_front();
    // Copy: `insert` may reallocate `store` and the occurrence lists.
    const Clause current = store[id];
    for (Lit l : current) {
      auto it = occurs.find(~l);
      if (it == occurs.end()) continue;
      const std::vector<std::size_t> partners = it->second;
      for (std::size_t other : partners) {
        if (auto r = resolve(current, store[other], l.var())) insert(std::move(*r));
      }
    }
  }
  return closure;
}

}  // namespace abd
