#include "abd/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "abd/error.hpp"
#include "json.hpp"

namespace abd {

Solution::Solution(std::vector<Var> hyps) : hyps_(std::move(hyps)) {
  std::sort(hyps_.begin(), hyps_.end());
  hyps_.erase(std::unique(hyps_.begin(), hyps_.end()), hyps_.end());
}

bool Solution::contains(Var v) const { return std::binary_search(hyps_.begin(), hyps_.end(), v); }

bool Solution::is_subset_of(const Solution& other) const {
  return std::includes(other.hyps_.begin(), other.hyps_.end(), hyps_.begin(), hyps_.end());
}

AbductionInstance::AbductionInstance(std::vector<std::string> names, std::vector<Var> hyps, std::vector<Var> mans,
                                     Cnf theory)
    : names_(std::move(names)), hyps_(std::move(hyps)), mans_(std::move(mans)), theory_(std::move(theory)) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], Var(i)).second) throw InvalidArgument("duplicate variable '" + names_[i] + "'");
  }
  auto normalize = [&](std::vector<Var>& vs, const char* what) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (Var v : vs)
      if (v.index() >= names_.size()) throw InvalidArgument(std::string(what) + " variable outside V");
  };
  normalize(hyps_, "hypothesis");
  normalize(mans_, "manifestation");

  role_.assign(names_.size(), Role::Plain);
  for (Var h : hyps_) role_[h.index()] = Role::Hyp;
  for (Var m : mans_) {
    if (role_[m.index()] == Role::Hyp) throw InvalidArgument("M ∩ H ≠ ∅: '" + names_[m.index()] + "'");
    role_[m.index()] = Role::Man;
  }
  if (theory_.num_vars() > names_.size()) {
    for (const auto& c : theory_.clauses())
      if (c.var_bound() > names_.size()) throw InvalidArgument("theory mentions a variable outside V");
  }
  theory_.reserve_vars(names_.size());
}

std::optional<Var> AbductionInstance::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Solution AbductionInstance::solution(std::span<const std::string> names) const {
  std::vector<Var> vs;
  for (const auto& n : names) {
    auto v = find(n);
    if (!v) throw InvalidArgument("unknown variable '" + n + "'");
    if (!is_hyp(*v)) throw InvalidArgument("'" + n + "' is not a hypothesis");
    vs.push_back(*v);
  }
  return Solution(std::move(vs));
}

std::vector<std::string> AbductionInstance::names_of(std::span<const Var> vars) const {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (Var v : vars) out.push_back(name(v));
  return out;
}

std::string AbductionInstance::format(const Solution& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += name(s.hypotheses()[i]);
  }
  return out + "}";
}

std::string AbductionInstance::format(const Clause& c) const {
  if (c.empty()) return "□";
  std::string out = "{";
  bool first = true;
  for (Lit l : c) {
    if (!first) out += ", ";
    first = false;
    if (!l.positive()) out += "-";
    out += name(l.var());
  }
  return out + "}";
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct RawInstance {
  std::vector<std::string> vars;
  std::vector<std::string> hyps;
  std::vector<std::string> mans;
  std::vector<std::vector<std::string>> clauses;
  std::vector<std::size_t> clause_lines;
};

AbductionInstance build(const RawInstance& raw) {
  std::unordered_map<std::string, Var> index;
  for (std::uint32_t i = 0; i < raw.vars.size(); ++i) index.emplace(raw.vars[i], Var(i));
  auto lookup = [&](const std::string& n, std::size_t line) {
    auto it = index.find(n);
    if (it == index.end()) {
      std::string where = line ? "line " + std::to_string(line) + ": " : "";
      throw InvalidArgument(where + "undeclared variable '" + n + "'");
    }
    return it->second;
  };
  std::vector<Var> hyps, mans;
  for (const auto& n : raw.hyps) hyps.push_back(lookup(n, 0));
  for (const auto& n : raw.mans) mans.push_back(lookup(n, 0));
  Cnf theory(raw.vars.size());
  for (std::size_t i = 0; i < raw.clauses.size(); ++i) {
    std::vector<Lit> lits;
    std::size_t line = i < raw.clause_lines.size() ? raw.clause_lines[i] : 0;
    for (const auto& tok : raw.clauses[i]) {
      bool negative = !tok.empty() && tok.front() == '-';
      std::string n = negative ? tok.substr(1) : tok;
      if (n.empty()) throw ParseError(line, "malformed literal '" + tok + "'");
      lits.emplace_back(lookup(n, line), !negative);
    }
    theory.add(Clause(std::move(lits)));
  }
  return AbductionInstance(raw.vars, std::move(hyps), std::move(mans), std::move(theory));
}

}  // namespace

AbductionInstance parse_instance(std::string_view text) {
  RawInstance raw;
  bool have_vars = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string kw = toks.front();
    toks.erase(toks.begin());
    if (kw == "var") {
      if (have_vars) throw ParseError(lineno, "duplicate 'var' line");
      have_vars = true;
      raw.vars = std::move(toks);
      for (const auto& n : raw.vars)
        if (n.front() == '-') throw ParseError(lineno, "variable names must not start with '-'");
      continue;
    }
    if (!have_vars) throw ParseError(lineno, "'" + kw + "' before the 'var' line");
    if (kw == "hyp") {
      raw.hyps.insert(raw.hyps.end(), toks.begin(), toks.end());
    } else if (kw == "man") {
      raw.mans.insert(raw.mans.end(), toks.begin(), toks.end());
    } else if (kw == "clause") {
      raw.clauses.push_back(std::move(toks));
      raw.clause_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_vars) throw ParseError(0, "missing 'var' line");
  return build(raw);
}

AbductionInstance parse_instance_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    RawInstance raw;
    raw.vars = j.at("vars").get<std::vector<std::string>>();
    raw.hyps = j.value("hyps", std::vector<std::string>{});
    raw.mans = j.value("mans", std::vector<std::string>{});
    raw.clauses = j.value("clauses", std::vector<std::vector<std::string>>{});
    return build(raw);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid JSON instance: ") + e.what());
  }
}

AbductionInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") return parse_instance_json(buf.str());
  return parse_instance(buf.str());
}

std::string to_text(const AbductionInstance& p) {
  std::ostringstream out;
  out << "var";
  for (const auto& n : p.names()) out << ' ' << n;
  out << "\nhyp";
  for (Var h : p.hyps()) out << ' ' << p.name(h);
  out << "\nman";
  for (Var m : p.mans()) out << ' ' << p.name(m);
  out << '\n';
  for (const auto& c : p.theory().clauses()) {
    out << "clause";
    for (Lit l : c) out << ' ' << (l.positive() ? "" : "-") << p.name(l.var());
    out << '\n';
  }
  return out.str();
}

std::string to_json_text(const AbductionInstance& p) {
  nlohmann::json j;
  j["vars"] = p.names();
  j["hyps"] = p.names_of(p.hyps());
  j["mans"] = p.names_of(p.mans());
  auto clauses = nlohmann::json::array();
  for (const auto& c : p.theory().clauses()) {
    auto lits = nlohmann::json::array();
    for (Lit l : c) lits.push_back((l.positive() ? "" : "-") + p.name(l.var()));
    clauses.push_back(std::move(lits));
  }
  j["clauses"] = std::move(clauses);
  return j.dump(2);
}

}  // namespace abd
