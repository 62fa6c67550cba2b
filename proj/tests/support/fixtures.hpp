#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "abd/backdoor.hpp"
#include "abd/instance.hpp"

namespace abd::testing {

inline constexpr const char* kSkiing = R"(# skiing
var snows rains precipitation warm hurt sad
hyp precipitation warm hurt
man sad
clause -precipitation rains snows
clause -hurt sad
clause -warm -snows
clause -rains sad
)";

inline AbductionInstance ex() { return parse_instance(kSkiing); }

inline Var v(const AbductionInstance& p, const std::string& name) { return *p.find(name); }

inline Solution sol(const AbductionInstance& p, std::initializer_list<std::string> names) {
  std::vector<std::string> list(names);
  return p.solution(list);
}

inline BackdoorSet bd(const AbductionInstance& p, std::initializer_list<std::string> names, BaseClass cls) {
  std::vector<Var> vars;
  for (const auto& n : names) vars.push_back(v(p, n));
  std::sort(vars.begin(), vars.end());
  return BackdoorSet{vars, cls};
}

inline Clause clause(const AbductionInstance& p, std::initializer_list<std::string> lits) {
  std::vector<Lit> out;
  for (const auto& l : lits) out.push_back(l[0] == '-' ? Lit::neg(v(p, l.substr(1))) : Lit::pos(v(p, l)));
  return Clause(std::move(out));
}

}  // namespace abd::testing
