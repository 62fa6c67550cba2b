#include "abd/queries.hpp"

#include <algorithm>

#include "abd/error.hpp"
#include "abd/horn.hpp"
#include "abd/krom.hpp"
#include "abd/subset_min.hpp"

namespace abd {

Encoding encode_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options) {
  return b.base_class == BaseClass::Horn ? encode_horn_solv(p, b, options) : encode_krom_solv(p, b, options);
}

bool check_solution(const AbductionInstance& p, const BackdoorSet& b, const Solution& s, bool strict_paper) {
  return b.base_class == BaseClass::Horn ? check_solution_horn(p, b, s) : check_solution_krom(p, b, s, strict_paper);
}

std::optional<Solution> find_solution(const AbductionInstance& p, const BackdoorSet& b, const QueryOptions& options) {
  Encoding enc = encode_solv(p, b, options.encode);
  if (options.at_most_k) add_at_most_k(enc, *options.at_most_k);
  SolverResult result = solve(enc.cnf, options.solver);
  if (!result.satisfiable()) return std::nullopt;
  return decode_solution(enc, result.model);
}

std::optional<Solution> SolutionEnumerator::next() {
  if (exhausted_) return std::nullopt;
  ++calls_;
  SolverResult result = solve(enc_.cnf, solver_);
  if (!result.satisfiable()) {
    exhausted_ = true;
    return std::nullopt;
  }
  Solution s = decode_solution(enc_, result.model);
  std::vector<Lit> block;
  for (Var x : enc_.projection_vars) block.push_back(Lit(x, !result.model[x.index()]));
  enc_.cnf.add(Clause(std::move(block)));
  return s;
}

namespace {

std::vector<Solution> drain(SolutionEnumerator& it) {
  std::vector<Solution> out;
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::vector<Solution> enumerate_solutions(const AbductionInstance& p, const BackdoorSet& b,
                                          const QueryOptions& options) {
  EncodeOptions encode = options.encode;
  encode.decoupled = true;
  Encoding enc = encode_solv(p, b, encode);
  if (options.at_most_k) add_at_most_k(enc, *options.at_most_k);
  SolutionEnumerator it(std::move(enc), options.solver);
  auto out = drain(it);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Solution> enumerate_minimal(const AbductionInstance& p, const BackdoorSet& b,
                                        const QueryOptions& options) {
  // The empty set, when it is a solution, is the only minimal one.
  {
    EncodeOptions encode = options.encode;
    encode.decoupled = true;
    Encoding enc = encode_solv(p, b, encode);
    add_at_most_k(enc, 0);
    if (solve(enc.cnf, options.solver).satisfiable()) return {Solution{}};
  }
  const SubsetMinOptions sm = subset_min_options(options.encode);
  std::vector<Solution> out;
  for (Var h : p.hyps()) {
    Encoding enc = encode_subsetmin(p, b, h, sm);
    if (options.at_most_k) add_at_most_k(enc, *options.at_most_k);
    SolutionEnumerator it(std::move(enc), options.solver);
    for (auto& s : drain(it)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool relevance(const AbductionInstance& p, const BackdoorSet& b, Var h_star, RelevanceMode mode,
               const QueryOptions& options, Solution* witness) {
  if (!p.is_hyp(h_star)) throw InvalidArgument("'" + p.name(h_star) + "' is not a hypothesis");
  Encoding enc;
  if (mode == RelevanceMode::MinimalSolution) {
    enc = encode_subsetmin(p, b, h_star, subset_min_options(options.encode));
  } else {
    EncodeOptions encode = options.encode;
    encode.decoupled = true;
    enc = encode_solv(p, b, encode);
    add_projection_unit(enc, h_star, true);
  }
  if (options.at_most_k) add_at_most_k(enc, *options.at_most_k);
  SolverResult result = solve(enc.cnf, options.solver);
  if (!result.satisfiable()) return false;
  if (witness) *witness = decode_solution(enc, result.model);
  return true;
}

}  // namespace abd
