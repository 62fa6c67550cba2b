#pragma once

// Brute-force ground truth. Works by enumerating all 2^|V| total assignments
// and never touches the SAT, backdoor or encoding code it is used to check.

#include <vector>

#include "abd/instance.hpp"

namespace abd {

struct OracleLimits {
  std::size_t max_vars = 20;
  std::size_t max_hyps = 12;
};

bool oracle_is_solution(const AbductionInstance& p, const Solution& s, OracleLimits limits = {});
// All solutions, in ascending order.
std::vector<Solution> oracle_solve(const AbductionInstance& p, OracleLimits limits = {});
// Inclusion-minimal elements of oracle_solve, ascending.
std::vector<Solution> oracle_subset_minimal(const AbductionInstance& p, OracleLimits limits = {});

bool within_oracle_limits(const AbductionInstance& p, OracleLimits limits = {});

}  // namespace abd
