#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abd/cnf.hpp"

namespace abd {

// A set of hypotheses, kept sorted by variable index.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<Var> hyps);

  std::span<const Var> hypotheses() const { return hyps_; }
  std::size_t size() const { return hyps_.size(); }
  bool empty() const { return hyps_.empty(); }
  bool contains(Var v) const;
  bool is_subset_of(const Solution& other) const;

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) { return a.hyps_ <=> b.hyps_; }

 private:
  std::vector<Var> hyps_;
};

// <V, H, M, T>. Variables are numbered in declaration order; H and M are kept
// sorted by index.
class AbductionInstance {
 public:
  // Throws InvalidArgument when H or M leave V, when they intersect, or when
  // T mentions a variable outside V.
  AbductionInstance(std::vector<std::string> names, std::vector<Var> hyps, std::vector<Var> mans, Cnf theory);

  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Var v) const { return names_.at(v.index()); }
  std::optional<Var> find(std::string_view name) const;

  std::span<const Var> hyps() const { return hyps_; }
  std::span<const Var> mans() const { return mans_; }
  const Cnf& theory() const { return theory_; }
  bool is_hyp(Var v) const { return role_.at(v.index()) == Role::Hyp; }
  bool is_man(Var v) const { return role_.at(v.index()) == Role::Man; }

  // Looks up each name; throws InvalidArgument for unknown names or names
  // outside H.
  Solution solution(std::span<const std::string> names) const;
  std::vector<std::string> names_of(std::span<const Var> vars) const;
  std::string format(const Solution& s) const;
  std::string format(const Clause& c) const;

 private:
  enum class Role : unsigned char { Plain, Hyp, Man };
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> index_;
  std::vector<Var> hyps_;
  std::vector<Var> mans_;
  std::vector<Role> role_;
  Cnf theory_;
};

// Line-oriented text format:
//   var <name> ...      exactly once, declares V in index order
//   hyp <name> ...      subset of V
//   man <name> ...      subset of V, disjoint from hyp
//   clause <lit> ...    lit = name | -name; no literals = empty clause
// '#' starts a comment. Throws ParseError (with line) or InvalidArgument.
AbductionInstance parse_instance(std::string_view text);
// JSON mirror: {"vars": [...], "hyps": [...], "mans": [...], "clauses": [["a","-b"], ...]}
AbductionInstance parse_instance_json(std::string_view text);
// Dispatches on the extension (.json or anything else).
AbductionInstance load_instance(const std::filesystem::path& path);

std::string to_text(const AbductionInstance& p);
std::string to_json_text(const AbductionInstance& p);

}  // namespace abd
