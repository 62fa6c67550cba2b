#pragma once

// End-to-end queries over the encoders: decision, enumeration by blocking
// clauses, subset-minimal enumeration and relevance.

#include <optional>
#include <vector>

#include "abd/backdoor.hpp"
#include "abd/encoding.hpp"
#include "abd/instance.hpp"
#include "abd/sat.hpp"

namespace abd {

struct QueryOptions {
  EncodeOptions encode;
  SolverConfig solver;
  std::optional<std::size_t> at_most_k;
};

// Dispatches on b.base_class.
Encoding encode_solv(const AbductionInstance& p, const BackdoorSet& b, const EncodeOptions& options = {});

// Runs the class-appropriate solution checker.
bool check_solution(const AbductionInstance& p, const BackdoorSet& b, const Solution& s, bool strict_paper = false);

// Single-shot decision; returns a decoded solution or nullopt.
std::optional<Solution> find_solution(const AbductionInstance& p, const BackdoorSet& b,
                                      const QueryOptions& options = {});

// Repeated solving with blocking clauses over the projection variables.
class SolutionEnumerator {
 public:
  SolutionEnumerator(Encoding enc, SolverConfig solver) : enc_(std::move(enc)), solver_(std::move(solver)) {}
  std::optional<Solution> next();
  const Encoding& encoding() const { return enc_; }
  std::size_t solver_calls() const { return calls_; }

 private:
  Encoding enc_;
  SolverConfig solver_;
  bool exhausted_ = false;
  std::size_t calls_ = 0;
};

// All solutions, via the decoupled encoding. Sorted.
std::vector<Solution> enumerate_solutions(const AbductionInstance& p, const BackdoorSet& b,
                                          const QueryOptions& options = {});

// All subset-minimal solutions: one subset-minimal encoding per hypothesis
// plus a check whether the empty set is a solution. Sorted.
std::vector<Solution> enumerate_minimal(const AbductionInstance& p, const BackdoorSet& b,
                                        const QueryOptions& options = {});

enum class RelevanceMode { AnySolution, MinimalSolution };

// Whether h_star occurs in some (subset-minimal) solution; `witness` receives
// a decoded solution containing it.
bool relevance(const AbductionInstance& p, const BackdoorSet& b, Var h_star, RelevanceMode mode,
               const QueryOptions& options = {}, Solution* witness = nullptr);

}  // namespace abd
