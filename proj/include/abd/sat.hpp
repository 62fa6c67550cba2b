#pragma once

// DIMACS output, the built-in DPLL solver, external solver processes and a
// sequential-counter cardinality constraint.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abd/cnf.hpp"
#include "abd/encoding.hpp"

namespace abd {

enum class SatStatus { Satisfiable, Unsatisfiable };

struct SolverResult {
  SatStatus status = SatStatus::Unsatisfiable;
  std::vector<bool> model;  // one entry per CNF variable when satisfiable

  bool satisfiable() const { return status == SatStatus::Satisfiable; }
};

// Variables are numbered index + 1.
std::string to_dimacs(const Cnf& cnf);

// Watched-literal DPLL with chronological backtracking, branching on the
// first unassigned variable, positive phase first.
SolverResult builtin_solve(const Cnf& cnf);

// Runs `command`, where "{file}" is replaced by the path of a temporary
// DIMACS file (appended when absent). Reads SAT-competition output.
class ExternalSolver {
 public:
  explicit ExternalSolver(std::string command) : command_(std::move(command)) {}
  const std::string& command() const { return command_; }
  SolverResult solve(const Cnf& cnf) const;

 private:
  std::string command_;
};

// Parses solver stdout. Exit codes 10/20 are used only when no status line
// is present. Throws SolverError.
SolverResult parse_solver_output(std::string_view output, int exit_code, std::size_t num_vars);

struct SolverConfig {
  std::optional<std::string> external;  // command template; builtin when empty
};

// Solver from ABDUCE_EXTERNAL_SOLVER, else the one found at configure time,
// else nullopt.
std::optional<std::string> default_external_solver();

// Dispatches and re-verifies the model. Throws SolverError(BadModel) when
// the returned model falsifies a clause.
SolverResult solve(const Cnf& cnf, const SolverConfig& config = {});

// Sequential counter over fresh variables from `fresh`: at most k of `vars`
// are true.
std::vector<Clause> at_most_k(std::span<const Var> vars, std::size_t k, const std::function<Var()>& fresh);

// Adds at_most_k over enc.projection_vars with auxiliary roles.
void add_at_most_k(Encoding& enc, std::size_t k);

}  // namespace abd
