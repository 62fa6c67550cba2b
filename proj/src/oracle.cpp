#include "abd/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "abd/error.hpp"

namespace abd {

namespace {

// Models of T as bitmasks over V. Deliberately naive.
std::vector<std::uint32_t> theory_models(const AbductionInstance& p, OracleLimits limits) {
  if (p.num_vars() > limits.max_vars)
    throw ResourceLimit("oracle: |V| = " + std::to_string(p.num_vars()) + " exceeds " +
                        std::to_string(limits.max_vars));
  std::vector<std::uint32_t> models;
  const std::uint64_t total = std::uint64_t{1} << p.num_vars();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    bool ok = true;
    for (const auto& c : p.theory().clauses()) {
      bool sat = false;
      for (Lit l : c) {
        bool value = (bits >> l.var().index()) & 1u;
        if (value == l.positive()) {
          sat = true;
          break;
        }
      }
      if (!sat && !c.is_tautological()) {
        ok = false;
        break;
      }
    }
    if (ok) models.push_back(static_cast<std::uint32_t>(bits));
  }
  return models;
}

std::uint32_t mask_of(std::span<const Var> vars) {
  std::uint32_t m = 0;
  for (Var v : vars) m |= 1u << v.index();
  return m;
}

bool is_solution(const std::vector<std::uint32_t>& models, std::uint32_t s_mask, std::uint32_t m_mask) {
  bool consistent = false;
  for (std::uint32_t model : models) {
    if ((model & s_mask) != s_mask) continue;
    consistent = true;
    if ((model & m_mask) != m_mask) return false;
  }
  return consistent;
}

}  // namespace

bool within_oracle_limits(const AbductionInstance& p, OracleLimits limits) {
  return p.num_vars() <= limits.max_vars && p.hyps().size() <= limits.max_hyps;
}

bool oracle_is_solution(const AbductionInstance& p, const Solution& s, OracleLimits limits) {
  for (Var h : s.hypotheses())
    if (!p.is_hyp(h)) throw InvalidArgument("oracle: candidate contains a non-hypothesis");
  auto models = theory_models(p, limits);
  return is_solution(models, mask_of(s.hypotheses()), mask_of(p.mans()));
}

std::vector<Solution> oracle_solve(const AbductionInstance& p, OracleLimits limits) {
  if (p.hyps().size() > limits.max_hyps)
    throw ResourceLimit("oracle: |H| = " + std::to_string(p.hyps().size()) + " exceeds " +
                        std::to_string(limits.max_hyps));
  auto models = theory_models(p, limits);
  const auto hyps = p.hyps();
  const std::uint32_t m_mask = mask_of(p.mans());
  std::vector<Solution> out;
  for (std::uint32_t subset = 0; subset < (1u << hyps.size()); ++subset) {
    std::vector<Var> chosen;
    for (std::size_t i = 0; i < hyps.size(); ++i)
      if ((subset >> i) & 1u) chosen.push_back(hyps[i]);
    if (is_solution(models, mask_of(chosen), m_mask)) out.emplace_back(std::move(chosen));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Solution> oracle_subset_minimal(const AbductionInstance& p, OracleLimits limits) {
  auto all = oracle_solve(p, limits);
  std::vector<Solution> out;
  for (const auto& s : all) {
    bool minimal = std::none_of(all.begin(), all.end(),
                                [&](const Solution& t) { return t != s && t.is_subset_of(s); });
    if (minimal) out.push_back(s);
  }
  return out;
}

}  // namespace abd
