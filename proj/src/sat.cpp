#include "abd/sat.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abd/error.hpp"

namespace abd {

std::string to_dimacs(const Cnf& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_vars()) + " " + std::to_string(cnf.size()) + "\n";
  for (const auto& c : cnf.clauses()) {
    for (Lit l : c) {
      if (!l.positive()) out += '-';
      out += std::to_string(l.var().index() + 1);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

namespace {

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : n_(cnf.num_vars()), value_(cnf.num_vars(), kUnset), watches_(2 * cnf.num_vars()) {
    for (const auto& c : cnf.clauses()) {
      if (c.is_tautological()) continue;
      if (c.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      if (c.size() == 1) {
        units_.push_back(c.literals()[0]);
        continue;
      }
      clauses_.emplace_back(c.begin(), c.end());
      const std::size_t id = clauses_.size() - 1;
      watches_[clauses_[id][0].code()].push_back(id);
      watches_[clauses_[id][1].code()].push_back(id);
    }
  }

  SolverResult run() {
    SolverResult result;
    if (trivially_unsat_) return result;
    for (Lit l : units_) {
      if (is_false(l)) return result;
      if (!is_true(l)) assign(l);
    }
    for (;;) {
      if (!propagate()) {
        if (!backtrack()) return result;
        continue;
      }
      auto next = pick();
      if (!next) break;
      levels_.push_back({trail_.size(), Lit::pos(*next), false});
      assign(Lit::pos(*next));
    }
    result.status = SatStatus::Satisfiable;
    result.model.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) result.model[v] = value_[v] == kTrue;
    return result;
  }

 private:
  static constexpr std::int8_t kUnset = -1, kFalse = 0, kTrue = 1;

  struct Level {
    std::size_t trail_start;
    Lit decision;
    bool flipped;
  };

  bool is_true(Lit l) const { return value_[l.var().index()] == (l.positive() ? kTrue : kFalse); }
  bool is_false(Lit l) const { return value_[l.var().index()] == (l.positive() ? kFalse : kTrue); }

  void assign(Lit l) {
    value_[l.var().index()] = l.positive() ? kTrue : kFalse;
    trail_.push_back(l);
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const Lit falsified = ~trail_[head_++];
      auto& watching = watches_[falsified.code()];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t w = 0; w < watching.size(); ++w) {
        const std::size_t id = watching[w];
        if (conflict) {
          watching[keep++] = id;
          continue;
        }
        auto& c = clauses_[id];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (is_true(c[0])) {
          watching[keep++] = id;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (!is_false(c[k])) {
            std::swap(c[1], c[k]);
            watches_[c[1].code()].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        watching[keep++] = id;
        if (is_false(c[0])) {
          conflict = true;
        } else {
          assign(c[0]);
        }
      }
      watching.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  // Undoes the deepest unflipped decision and asserts its negation.
  bool backtrack() {
    while (!levels_.empty()) {
      Level& top = levels_.back();
      undo_to(top.trail_start);
      if (!top.flipped) {
        top.flipped = true;
        assign(~top.decision);
        return true;
      }
      levels_.pop_back();
    }
    return false;
  }

  void undo_to(std::size_t size) {
    while (trail_.size() > size) {
      const Var v = trail_.back().var();
      value_[v.index()] = kUnset;
      next_ = std::min<std::size_t>(next_, v.index());
      trail_.pop_back();
    }
    head_ = size;
  }

  std::optional<Var> pick() {
    while (next_ < n_ && value_[next_] != kUnset) ++next_;
    if (next_ == n_) return std::nullopt;
    return Var(static_cast<std::uint32_t>(next_));
  }

  std::size_t n_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<Lit> units_;
  std::vector<Lit> trail_;
  std::vector<Level> levels_;
  std::size_t head_ = 0;
  std::size_t next_ = 0;
  bool trivially_unsat_ = false;
};

bool satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  if (model.size() < cnf.num_vars()) return false;
  return std::all_of(cnf.clauses().begin(), cnf.clauses().end(), [&](const Clause& c) {
    return c.is_tautological() ||
           std::any_of(c.begin(), c.end(), [&](Lit l) { return model[l.var().index()] == l.positive(); });
  });
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

class TempFile {
 public:
  TempFile() {
    std::string pattern = (std::filesystem::temp_directory_path() / "abduce-XXXXXX").string();
    int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw SolverError(SolverError::Kind::Crashed, "cannot create temporary DIMACS file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

SolverResult builtin_solve(const Cnf& cnf) { return Dpll(cnf).run(); }

SolverResult parse_solver_output(std::string_view output, int exit_code, std::size_t num_vars) {
  std::optional<SatStatus> status;
  std::vector<bool> model(num_vars, false);
  bool saw_values = false;
  std::istringstream lines{std::string(output)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("s ", 0) == 0) {
      std::string word = line.substr(2);
      word.erase(word.find_last_not_of(" \t\r") + 1);
      if (word == "SATISFIABLE") {
        status = SatStatus::Satisfiable;
      } else if (word == "UNSATISFIABLE") {
        status = SatStatus::Unsatisfiable;
      } else {
        throw SolverError(SolverError::Kind::MalformedOutput, "unexpected status line: " + line);
      }
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      saw_values = true;
      std::istringstream values(line.substr(1));
      std::string token;
      while (values >> token) {
        long long lit = 0;
        try {
          std::size_t used = 0;
          lit = std::stoll(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw SolverError(SolverError::Kind::MalformedOutput, "malformed value token '" + token + "'");
        }
        if (lit == 0) continue;
        const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
        if (var > num_vars)
          throw SolverError(SolverError::Kind::MalformedOutput, "value for unknown variable " + std::to_string(var));
        model[var - 1] = lit > 0;
      }
    }
  }
  if (!status) {
    if (exit_code == 20) {
      status = SatStatus::Unsatisfiable;
    } else if (exit_code == 10 && saw_values) {
      status = SatStatus::Satisfiable;
    } else if (exit_code != 0 && exit_code != 10) {
      throw SolverError(SolverError::Kind::Crashed,
                        "solver exited with status " + std::to_string(exit_code) + " without a status line");
    } else {
      throw SolverError(SolverError::Kind::MalformedOutput, "solver output has no status line");
    }
  }
  SolverResult result;
  result.status = *status;
  if (result.satisfiable()) {
    if (!saw_values && num_vars > 0)
      throw SolverError(SolverError::Kind::MalformedOutput, "satisfiable answer without value lines");
    result.model = std::move(model);
  }
  return result;
}

SolverResult ExternalSolver::solve(const Cnf& cnf) const {
  TempFile file;
  {
    std::ofstream out(file.path(), std::ios::binary);
    out << to_dimacs(cnf);
    if (!out) throw SolverError(SolverError::Kind::Crashed, "cannot write temporary DIMACS file");
  }
  std::string command = command_;
  const std::string placeholder = "{file}";
  if (auto at = command.find(placeholder); at != std::string::npos) {
    command.replace(at, placeholder.size(), shell_quote(file.path()));
  } else {
    command += " " + shell_quote(file.path());
  }

  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw SolverError(SolverError::Kind::NotFound, "cannot start solver: " + command_);
  std::string output;
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) output.append(buffer.data(), got);
  const int raw = ::pclose(pipe);
  if (raw == -1) throw SolverError(SolverError::Kind::Crashed, "lost solver process: " + command_);
  if (WIFSIGNALED(raw))
    throw SolverError(SolverError::Kind::Crashed, "solver killed by signal " + std::to_string(WTERMSIG(raw)));
  const int exit_code = WEXITSTATUS(raw);
  if ((exit_code == 127 || exit_code == 126) && output.empty())
    throw SolverError(SolverError::Kind::NotFound, "solver command not runnable: " + command_);
  return parse_solver_output(output, exit_code, cnf.num_vars());
}

std::optional<std::string> default_external_solver() {
  if (const char* env = std::getenv("ABDUCE_EXTERNAL_SOLVER"); env && *env) return std::string(env);
#ifdef ABDUCE_DEFAULT_SOLVER
  if (std::string configured = ABDUCE_DEFAULT_SOLVER; !configured.empty()) return configured;
#endif
  return std::nullopt;
}

SolverResult solve(const Cnf& cnf, const SolverConfig& config) {
  SolverResult result = config.external ? ExternalSolver(*config.external).solve(cnf) : builtin_solve(cnf);
  if (result.satisfiable() && !satisfies(cnf, result.model))
    throw SolverError(SolverError::Kind::BadModel, "solver returned an assignment that falsifies the formula");
  return result;
}

std::vector<Clause> at_most_k(std::span<const Var> vars, std::size_t k, const std::function<Var()>& fresh) {
  std::vector<Clause> out;
  const std::size_t n = vars.size();
  if (k >= n) return out;
  if (k == 0) {
    for (Var x : vars) out.push_back(Clause{Lit::neg(x)});
    return out;
  }
  // s[i][j]: at least j+1 of vars[0..i] are true.
  std::vector<std::vector<Var>> s(n - 1, std::vector<Var>(k));
  for (auto& row : s)
    for (auto& v : row) v = fresh();

  out.push_back(Clause{Lit::neg(vars[0]), Lit::pos(s[0][0])});
  for (std::size_t j = 1; j < k; ++j) out.push_back(Clause{Lit::neg(s[0][j])});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.push_back(Clause{Lit::neg(vars[i]), Lit::pos(s[i][0])});
    out.push_back(Clause{Lit::neg(s[i - 1][0]), Lit::pos(s[i][0])});
    for (std::size_t j = 1; j < k; ++j) {
      out.push_back(Clause{Lit::neg(vars[i]), Lit::neg(s[i - 1][j - 1]), Lit::pos(s[i][j])});
      out.push_back(Clause{Lit::neg(s[i - 1][j]), Lit::pos(s[i][j])});
    }
    out.push_back(Clause{Lit::neg(vars[i]), Lit::neg(s[i - 1][k - 1])});
  }
  out.push_back(Clause{Lit::neg(vars[n - 1]), Lit::neg(s[n - 2][k - 1])});
  return out;
}

void add_at_most_k(Encoding& enc, std::size_t k) {
  auto clauses = at_most_k(enc.projection_vars, k, [&enc] { return add_auxiliary(enc); });
  for (auto& c : clauses) enc.cnf.add(std::move(c));
  enc.stats.variables = enc.cnf.num_vars();
  enc.stats.clauses = enc.cnf.size();
}

}  // namespace abd
