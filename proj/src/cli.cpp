#include "abd/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "abd/backdoor.hpp"
#include "abd/error.hpp"
#include "abd/instance.hpp"
#include "abd/oracle.hpp"
#include "abd/queries.hpp"
#include "abd/sat.hpp"
#include "abd/subset_min.hpp"
#include "CLI11.hpp"
#include "json.hpp"

namespace abd::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string instance_path;
  std::string base_class = "auto";
  std::vector<std::string> backdoor;
  std::size_t max_k = 8;
  std::string solver;
  bool builtin = false;
  bool minimal = false;
  std::optional<std::size_t> at_most_k;
  bool strict_paper = false;
  bool decoupled = false;
  bool json = false;
  bool self_check = false;
  std::vector<std::string> solution;
  std::string h;
  std::string output;
};

// Failures that are the tool's fault or the instance's, not the caller's.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split_names(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) out.push_back(name);
  }
  return out;
}

json solution_json(const AbductionInstance& p, const Solution& s) { return p.names_of(s.hypotheses()); }

json backdoor_json(const AbductionInstance& p, const BackdoorSet& b) {
  return {{"class", std::string(to_string(b.base_class))}, {"variables", p.names_of(b.variables)}};
}

json stats_json(const EncodingStats& s) {
  return {{"variables", s.variables},       {"clauses", s.clauses},         {"literals", s.literals},
          {"backdoor_size", s.backdoor_size}, {"assignments", s.assignments}, {"steps", s.steps}};
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig out;
  if (cfg.builtin) return out;
  if (cfg.solver == "default") {
    out.external = default_external_solver();
    if (!out.external) throw SolverError(SolverError::Kind::NotFound, "no external solver configured");
  } else if (!cfg.solver.empty()) {
    out.external = cfg.solver;
  } else if (const char* env = std::getenv("ABDUCE_EXTERNAL_SOLVER"); env && *env) {
    out.external = std::string(env);
  }
  return out;
}

std::vector<BaseClass> requested_classes(const RunConfig& cfg) {
  if (cfg.base_class == "auto") return {BaseClass::Horn, BaseClass::Krom};
  return {*parse_base_class(cfg.base_class)};
}

BackdoorSet resolve_backdoor(const AbductionInstance& p, const RunConfig& cfg, std::ostream& err) {
  const auto classes = requested_classes(cfg);
  if (!cfg.backdoor.empty()) {
    std::vector<Var> vars;
    for (const auto& name : split_names(cfg.backdoor)) {
      auto v = p.find(name);
      if (!v) throw InvalidArgument("unknown backdoor variable '" + name + "'");
      vars.push_back(*v);
    }
    for (BaseClass cls : classes) {
      std::vector<Var> pruned;
      try {
        BackdoorSet b = prepare_backdoor(p, vars, cls, &pruned);
        for (Var v : pruned) err << "warning: backdoor variable '" << p.name(v) << "' does not occur in T, ignored\n";
        return b;
      } catch (const BackdoorError&) {
      }
    }
    throw BackdoorError("backdoor verification failed");
  }
  std::optional<BackdoorSet> best;
  for (BaseClass cls : classes) {
    try {
      BackdoorSet b = smallest_backdoor(p.theory(), cls, cfg.max_k);
      if (!best || b.variables.size() < best->variables.size()) best = std::move(b);
    } catch (const BackdoorError&) {
    }
  }
  if (!best) throw BackdoorError("no strong backdoor of size <= " + std::to_string(cfg.max_k));
  return *best;
}

QueryOptions query_options(const RunConfig& cfg) {
  QueryOptions q;
  q.encode.strict_paper = cfg.strict_paper;
  q.encode.decoupled = cfg.decoupled;
  q.solver = solver_config(cfg);
  q.at_most_k = cfg.at_most_k;
  return q;
}

Var hypothesis(const AbductionInstance& p, const std::string& name) {
  auto v = p.find(name);
  if (!v) throw InvalidArgument("unknown variable '" + name + "'");
  if (!p.is_hyp(*v)) throw InvalidArgument("'" + name + "' is not a hypothesis");
  return *v;
}

void self_check(const RunConfig& cfg, const AbductionInstance& p, const std::vector<Solution>& printed, bool minimal,
                json& report) {
  if (!cfg.self_check) return;
  if (!within_oracle_limits(p)) {
    report["self_check"] = "skipped";
    return;
  }
  const auto reference = minimal ? oracle_subset_minimal(p) : oracle_solve(p);
  for (const auto& s : printed) {
    if (!std::binary_search(reference.begin(), reference.end(), s))
      throw VerificationFailure("self-check failed: " + p.format(s) + " is not " +
                                (minimal ? "a subset-minimal solution" : "a solution"));
  }
  report["self_check"] = "passed";
}

json cmd_solve(const RunConfig& cfg, const AbductionInstance& p, const BackdoorSet& b) {
  const auto start = std::chrono::steady_clock::now();
  QueryOptions q = query_options(cfg);
  Encoding enc = encode_solv(p, b, q.encode);
  if (q.at_most_k) add_at_most_k(enc, *q.at_most_k);
  SolverResult result = solve(enc.cnf, q.solver);
  json report{{"command", "solve"}, {"backdoor", backdoor_json(p, b)}, {"encoding", stats_json(enc.stats)}};
  std::vector<Solution> printed;
  if (result.satisfiable()) {
    Solution s = decode_solution(enc, result.model);
    if (!check_solution(p, b, s))
      throw VerificationFailure("decoded candidate " + p.format(s) + " rejected by the solution checker");
    report["status"] = "sat";
    report["solution"] = solution_json(p, s);
    printed.push_back(s);
  } else {
    report["status"] = "unsat";
  }
  self_check(cfg, p, printed, false, report);
  report["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json cmd_enumerate(const RunConfig& cfg, const AbductionInstance& p, const BackdoorSet& b) {
  QueryOptions q = query_options(cfg);
  auto solutions = cfg.minimal ? enumerate_minimal(p, b, q) : enumerate_solutions(p, b, q);
  for (const auto& s : solutions)
    if (!check_solution(p, b, s))
      throw VerificationFailure("enumerated candidate " + p.format(s) + " rejected by the solution checker");
  json list = json::array();
  for (const auto& s : solutions) list.push_back(solution_json(p, s));
  json report{{"command", "enumerate"},
              {"minimal", cfg.minimal},
              {"backdoor", backdoor_json(p, b)},
              {"solutions", list},
              {"count", solutions.size()}};
  if (cfg.at_most_k) report["at_most_k"] = *cfg.at_most_k;
  self_check(cfg, p, solutions, cfg.minimal, report);
  return report;
}

json cmd_check(const RunConfig& cfg, const AbductionInstance& p, const BackdoorSet& b) {
  Solution s = p.solution(split_names(cfg.solution));
  const bool yes = check_solution(p, b, s, cfg.strict_paper);
  json report{{"command", "check"},
              {"backdoor", backdoor_json(p, b)},
              {"solution", solution_json(p, s)},
              {"answer", yes ? "yes" : "no"}};
  if (cfg.self_check && within_oracle_limits(p)) {
    if (oracle_is_solution(p, s) != yes) throw VerificationFailure("self-check failed: checker disagrees with oracle");
    report["self_check"] = "passed";
  }
  return report;
}

json cmd_detect(const RunConfig&, const AbductionInstance& p, const BackdoorSet& b) {
  return {{"command", "detect"}, {"backdoor", backdoor_json(p, b)}, {"size", b.variables.size()}};
}

json cmd_relevance(const RunConfig& cfg, const AbductionInstance& p, const BackdoorSet& b) {
  const Var h = hypothesis(p, cfg.h);
  Solution witness;
  const auto mode = cfg.minimal ? RelevanceMode::MinimalSolution : RelevanceMode::AnySolution;
  const bool yes = relevance(p, b, h, mode, query_options(cfg), &witness);
  json report{{"command", "relevance"},
              {"hypothesis", cfg.h},
              {"minimal", cfg.minimal},
              {"backdoor", backdoor_json(p, b)},
              {"answer", yes ? "yes" : "no"}};
  std::vector<Solution> printed;
  if (yes) {
    report["witness"] = solution_json(p, witness);
    printed.push_back(witness);
  }
  self_check(cfg, p, printed, cfg.minimal, report);
  return report;
}

json cmd_encode(const RunConfig& cfg, const AbductionInstance& p, const BackdoorSet& b) {
  QueryOptions q = query_options(cfg);
  Encoding enc;
  if (cfg.minimal) {
    enc = encode_subsetmin(p, b, hypothesis(p, cfg.h), subset_min_options(q.encode));
  } else {
    enc = encode_solv(p, b, q.encode);
  }
  if (q.at_most_k) add_at_most_k(enc, *q.at_most_k);

  json roles = json::array();
  for (std::size_t i = 0; i < enc.roles.size(); ++i) {
    const VarRole& r = enc.roles[i];
    json entry{{"cnf_var", i + 1}, {"role", std::string(to_string(r.kind))}};
    if (r.kind != RoleKind::Auxiliary) entry["var"] = p.name(Var(r.var));
    if (r.kind == RoleKind::Step) {
      entry["assignment"] = r.block;
      entry["step"] = r.step;
    } else if (r.kind == RoleKind::Copy) {
      entry["hypothesis"] = p.name(Var(r.block));
    }
    roles.push_back(std::move(entry));
  }
  json projection = json::array();
  for (std::size_t i = 0; i < enc.hypotheses.size(); ++i)
    projection.push_back({{"hypothesis", p.name(enc.hypotheses[i])}, {"cnf_var", enc.projection_vars[i].index() + 1}});
  json sidecar{{"projection", projection}, {"roles", roles}, {"backdoor", backdoor_json(p, b)}};

  const std::string dimacs = to_dimacs(enc.cnf);
  json report{{"command", "encode"}, {"backdoor", backdoor_json(p, b)}, {"encoding", stats_json(enc.stats)}};
  if (cfg.output.empty() || cfg.output == "-") {
    report["dimacs"] = dimacs;
    report["role_map"] = sidecar;
    return report;
  }
  const std::string roles_path = cfg.output + ".roles.json";
  std::ofstream(cfg.output, std::ios::binary) << dimacs;
  std::ofstream(roles_path, std::ios::binary) << sidecar.dump(2) << "\n";
  report["dimacs_path"] = cfg.output;
  report["role_map_path"] = roles_path;
  return report;
}

std::string names_text(const json& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i].get<std::string>();
  return out + "}";
}

void print_text(const json& r, std::ostream& out) {
  const std::string command = r["command"];
  const json& bd = r["backdoor"];
  out << "backdoor: " << bd["class"].get<std::string>() << " " << names_text(bd["variables"]) << "\n";
  if (command == "solve") {
    out << "status: " << r["status"].get<std::string>() << "\n";
    if (r.contains("solution")) out << "solution: " << names_text(r["solution"]) << "\n";
    const json& e = r["encoding"];
    out << "encoding: " << e["variables"] << " variables, " << e["clauses"] << " clauses\n";
  } else if (command == "enumerate") {
    for (const auto& s : r["solutions"]) out << names_text(s) << "\n";
    out << "count: " << r["count"] << "\n";
  } else if (command == "check" || command == "relevance") {
    out << r["answer"].get<std::string>() << "\n";
    if (r.contains("witness")) out << "witness: " << names_text(r["witness"]) << "\n";
  } else if (command == "detect") {
    out << "size: " << r["size"] << "\n";
  } else if (command == "encode") {
    if (r.contains("dimacs")) {
      out << r["dimacs"].get<std::string>();
    } else {
      out << "wrote " << r["dimacs_path"].get<std::string>() << " and " << r["role_map_path"].get<std::string>() << "\n";
    }
  }
  if (r.contains("self_check")) out << "self-check: " << r["self_check"].get<std::string>() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Propositional abduction via backdoor-based SAT encodings", "abduce"};
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("instance", cfg.instance_path, "Instance file (.abd text or .json)")->required();
    sub->add_option("--class", cfg.base_class, "Base class for the backdoor")
        ->check(CLI::IsMember({"horn", "krom", "auto"}));
    sub->add_option("--backdoor", cfg.backdoor, "Backdoor variables (comma separated)")->delimiter(',');
    sub->add_option("--detect,--max-k", cfg.max_k, "Ceiling for backdoor detection");
    sub->add_option("--solver", cfg.solver, "External solver command template, or 'default'");
    sub->add_flag("--builtin", cfg.builtin, "Use the built-in DPLL solver");
    sub->add_flag("--strict-paper", cfg.strict_paper, "Emit the unrepaired formulas");
    sub->add_flag("--json", cfg.json, "JSON report");
    sub->add_flag("--self-check", cfg.self_check, "Cross-check printed solutions with brute force");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Decide whether a solution exists");
  common(solve_cmd);
  solve_cmd->add_flag("--decoupled", cfg.decoupled, "Use selector variables");
  solve_cmd->add_option("--at-most-k", cfg.at_most_k, "Bound the solution size");

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "List all (subset-minimal) solutions");
  common(enum_cmd);
  enum_cmd->add_flag("--minimal", cfg.minimal, "Only subset-minimal solutions");
  enum_cmd->add_option("--at-most-k", cfg.at_most_k, "Bound the solution size");

  CLI::App* check_cmd = app.add_subcommand("check", "Check a candidate solution");
  common(check_cmd);
  check_cmd->add_option("--solution", cfg.solution, "Hypotheses (comma separated)")->delimiter(',')->required();

  CLI::App* detect_cmd = app.add_subcommand("detect", "Find a smallest strong backdoor");
  common(detect_cmd);

  CLI::App* encode_cmd = app.add_subcommand("encode", "Write the encoding as DIMACS plus a role map");
  common(encode_cmd);
  encode_cmd->add_option("-o,--output", cfg.output, "DIMACS path ('-' for stdout); roles go to <path>.roles.json");
  encode_cmd->add_flag("--decoupled", cfg.decoupled, "Use selector variables");
  encode_cmd->add_flag("--minimal", cfg.minimal, "Subset-minimal encoding for --h");
  encode_cmd->add_option("--h", cfg.h, "Designated hypothesis");
  encode_cmd->add_option("--at-most-k", cfg.at_most_k, "Bound the solution size");

  CLI::App* rel_cmd = app.add_subcommand("relevance", "Is a hypothesis in some (minimal) solution");
  common(rel_cmd);
  rel_cmd->add_option("--h", cfg.h, "Designated hypothesis")->required();
  rel_cmd->add_flag("--minimal", cfg.minimal, "Require a subset-minimal solution");
  rel_cmd->add_option("--at-most-k", cfg.at_most_k, "Bound the solution size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAnswered;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'abduce --help' for usage\n";
    return kUsageError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "encode" && cfg.minimal && cfg.h.empty()) {
    err << "error: encode --minimal needs --h\n";
    return kUsageError;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    if (cfg.json) {
      out << json{{"command", cfg.command}, {"error", message}, {"kind", kind}}.dump() << "\n";
    }
    err << "error: " << message << "\n";
    return code;
  };

  try {
    const AbductionInstance p = load_instance(cfg.instance_path);
    const BackdoorSet b = resolve_backdoor(p, cfg, err);
    json report;
    if (cfg.command == "solve") {
      report = cmd_solve(cfg, p, b);
    } else if (cfg.command == "enumerate") {
      report = cmd_enumerate(cfg, p, b);
    } else if (cfg.command == "check") {
      report = cmd_check(cfg, p, b);
    } else if (cfg.command == "detect") {
      report = cmd_detect(cfg, p, b);
    } else if (cfg.command == "encode") {
      report = cmd_encode(cfg, p, b);
    } else {
      report = cmd_relevance(cfg, p, b);
    }
    if (cfg.json) {
      out << report.dump() << "\n";
    } else {
      print_text(report, out);
    }
    return kAnswered;
  } catch (const ParseError& e) {
    return fail(kUsageError, "parse", e.what());
  } catch (const InvalidArgument& e) {
    return fail(kUsageError, "invalid-argument", e.what());
  } catch (const BackdoorError& e) {
    return fail(kFailure, "backdoor", e.what());
  } catch (const SolverError& e) {
    return fail(kFailure, "solver", e.what());
  } catch (const ResourceLimit& e) {
    return fail(kFailure, "resource-limit", e.what());
  } catch (const VerificationFailure& e) {
    return fail(kFailure, "verification", e.what());
  } catch (const Error& e) {
    return fail(kFailure, "error", e.what());
  }
}

}  // namespace abd::cli
