#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abd/cnf.hpp"
#include "abd/instance.hpp"

namespace abd {

enum class BaseClass { Horn, Krom };

std::string_view to_string(BaseClass cls);
std::optional<BaseClass> parse_base_class(std::string_view text);

struct BackdoorSet {
  std::vector<Var> variables;  // ascending
  BaseClass base_class = BaseClass::Horn;
};

inline constexpr std::size_t kMaxVerifiedBackdoor = 24;

// Definitional check: phi[tau] is in the class for every tau over B.
// Throws ResourceLimit when |B| exceeds `max_size`.
bool verify_strong_backdoor(const Cnf& phi, std::span<const Var> backdoor, BaseClass cls,
                            std::size_t max_size = kMaxVerifiedBackdoor);

// Bounded search trees over the structural characterisations: a strong Horn
// backdoor covers every pair of positive variables sharing a clause, a
// strong Krom backdoor hits every three variables sharing a clause. Branches
// on the lexicographically smallest violated edge/triple, smaller index
// first, so results are deterministic. Returns a set of size <= k or nullopt.
std::optional<std::vector<Var>> detect_horn_backdoor(const Cnf& phi, std::size_t k);
std::optional<std::vector<Var>> detect_krom_backdoor(const Cnf& phi, std::size_t k);

// First hit of the detector for k = 0, 1, ... ceiling. Throws BackdoorError
// when none exists within the ceiling.
BackdoorSet smallest_backdoor(const Cnf& phi, BaseClass cls, std::size_t ceiling);

// Normalises a user-supplied backdoor for `p`: sorts, drops duplicates and
// variables outside var(T) (reported through `pruned`), then verifies it.
// Throws BackdoorError("backdoor verification failed") on failure.
BackdoorSet prepare_backdoor(const AbductionInstance& p, std::vector<Var> vars, BaseClass cls,
                             std::vector<Var>* pruned = nullptr);

// Throws BackdoorError unless `b` is a strong backdoor of p.theory() for `cls`.
void ensure_backdoor(const AbductionInstance& p, const BackdoorSet& b, BaseClass cls);

// Calls `visit` with every assignment tau over `backdoor` (universe-sized),
// in binary-counting order over the ascending backdoor: bit j of the index
// is the value of backdoor[j]. Assignments that set a variable of
// `forced_true` to 0 are skipped, which yields 2^{B,S}.
void for_each_backdoor_assignment(std::size_t universe, std::span<const Var> backdoor,
                                  std::span<const Var> forced_true,
                                  const std::function<void(std::size_t, const PartialAssignment&)>& visit);

}  // namespace abd
