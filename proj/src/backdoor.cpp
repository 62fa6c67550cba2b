#include "abd/backdoor.hpp"

#include <algorithm>

#include "abd/error.hpp"

namespace abd {

std::string_view to_string(BaseClass cls) { return cls == BaseClass::Horn ? "horn" : "krom"; }

std::optional<BaseClass> parse_base_class(std::string_view text) {
  if (text == "horn") return BaseClass::Horn;
  if (text == "krom") return BaseClass::Krom;
  return std::nullopt;
}

void for_each_backdoor_assignment(std::size_t universe, std::span<const Var> backdoor,
                                  std::span<const Var> forced_true,
                                  const std::function<void(std::size_t, const PartialAssignment&)>& visit) {
  const std::size_t k = backdoor.size();
  std::uint64_t required = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (std::find(forced_true.begin(), forced_true.end(), backdoor[j]) != forced_true.end())
      required |= std::uint64_t{1} << j;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
    if ((i & required) != required) continue;
    PartialAssignment tau(universe);
    for (std::size_t j = 0; j < k; ++j) tau.set(backdoor[j], (i >> j) & 1u);
    visit(static_cast<std::size_t>(i), tau);
  }
}

bool verify_strong_backdoor(const Cnf& phi, std::span<const Var> backdoor, BaseClass cls, std::size_t max_size) {
  if (backdoor.size() > max_size)
    throw ResourceLimit("backdoor of size " + std::to_string(backdoor.size()) + " exceeds verification limit " +
                        std::to_string(max_size));
  bool ok = true;
  for_each_backdoor_assignment(phi.num_vars(), backdoor, {}, [&](std::size_t, const PartialAssignment& tau) {
    if (!ok) return;
    Cnf reduced = reduct(phi, tau);
    ok = cls == BaseClass::Horn ? is_horn(reduced) : is_krom(reduced);
  });
  return ok;
}

namespace {

// Shared bounded search: `violation` returns the lexicographically smallest
// uncovered group (pair or triple) given the current in-set flags, or an
// empty vector when everything is covered.
using Violation = std::function<std::vector<Var>(const std::vector<bool>&)>;

bool branch(const Violation& violation, std::vector<bool>& chosen, std::vector<Var>& picked, std::size_t budget) {
  auto group = violation(chosen);
  if (group.empty()) return true;
  if (budget == 0) return false;
  for (Var v : group) {
    chosen[v.index()] = true;
    picked.push_back(v);
    if (branch(violation, chosen, picked, budget - 1)) return true;
    picked.pop_back();
    chosen[v.index()] = false;
  }
  return false;
}

std::optional<std::vector<Var>> detect(const Cnf& phi, std::size_t k, std::size_t group_size, bool positives_only) {
  // Tautological clauses never violate either class and impose nothing.
  std::vector<std::vector<Var>> relevant;
  for (const auto& c : phi.clauses()) {
    if (c.is_tautological()) continue;
    std::vector<Var> vs;
    for (Lit l : c)
      if (!positives_only || l.positive()) vs.push_back(l.var());
    if (vs.size() >= group_size) relevant.push_back(std::move(vs));  // already ascending
  }
  Violation violation = [&](const std::vector<bool>& chosen) {
    std::vector<Var> best;
    for (const auto& vs : relevant) {
      std::vector<Var> group;
      for (Var v : vs) {
        if (chosen[v.index()]) continue;
        group.push_back(v);
        if (group.size() == group_size) break;
      }
      if (group.size() == group_size && (best.empty() || group < best)) best = std::move(group);
    }
    return best;
  };
  std::vector<bool> chosen(phi.num_vars(), false);
  std::vector<Var> picked;
  if (!branch(violation, chosen, picked, k)) return std::nullopt;
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

std::optional<std::vector<Var>> detect_horn_backdoor(const Cnf& phi, std::size_t k) { return detect(phi, k, 2, true); }

std::optional<std::vector<Var>> detect_krom_backdoor(const Cnf& phi, std::size_t k) {
  return detect(phi, k, 3, false);
}

BackdoorSet smallest_backdoor(const Cnf& phi, BaseClass cls, std::size_t ceiling) {
  for (std::size_t k = 0; k <= ceiling; ++k) {
    auto found = cls == BaseClass::Horn ? detect_horn_backdoor(phi, k) : detect_krom_backdoor(phi, k);
    if (found) return BackdoorSet{std::move(*found), cls};
  }
  throw BackdoorError("no strong " + std::string(to_string(cls)) + " backdoor of size <= " + std::to_string(ceiling));
}

void ensure_backdoor(const AbductionInstance& p, const BackdoorSet& b, BaseClass cls) {
  if (b.base_class != cls)
    throw BackdoorError("expected a " + std::string(to_string(cls)) + " backdoor, got " +
                        std::string(to_string(b.base_class)));
  if (!verify_strong_backdoor(p.theory(), b.variables, cls)) throw BackdoorError("backdoor verification failed");
}

BackdoorSet prepare_backdoor(const AbductionInstance& p, std::vector<Var> vars, BaseClass cls,
                             std::vector<Var>* pruned) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const auto occurring = p.theory().occurring_vars();
  std::vector<Var> kept;
  for (Var v : vars) {
    if (std::binary_search(occurring.begin(), occurring.end(), v)) {
      kept.push_back(v);
    } else if (pruned) {
      pruned->push_back(v);
    }
  }
  if (!verify_strong_backdoor(p.theory(), kept, cls)) throw BackdoorError("backdoor verification failed");
  return BackdoorSet{std::move(kept), cls};
}

}  // namespace abd
