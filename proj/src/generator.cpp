#include "abd/generator.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "abd/error.hpp"

namespace abd {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi]; rejection sampling keeps it portable.
  std::size_t between(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::size_t>(x % span);
  }
  bool coin() { return between(0, 1) == 1; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[between(0, i - 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

GeneratedInstance random_instance(std::uint64_t seed, const InstanceLimits& limits, const PlantedBackdoor& planted) {
  const std::size_t n = limits.vars;
  if (n == 0 || limits.hyps == 0 || limits.mans == 0 || limits.clauses == 0 || limits.width == 0)
    throw InvalidArgument("random_instance: limits must be positive");
  if (limits.hyps + limits.mans > n) throw InvalidArgument("random_instance: |H| + |M| exceeds |V|");
  if (planted.k > n - limits.mans) throw InvalidArgument("random_instance: k exceeds |V| - |M|");

  Rng rng(seed);
  std::vector<Var> order;
  for (std::uint32_t v = 0; v < n; ++v) order.emplace_back(v);
  rng.shuffle(order);

  const std::size_t num_h = rng.between(1, limits.hyps);
  const std::size_t num_m = rng.between(1, limits.mans);
  std::vector<Var> hyps(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(num_h));
  std::vector<Var> mans(order.begin() + static_cast<std::ptrdiff_t>(num_h),
                        order.begin() + static_cast<std::ptrdiff_t>(num_h + num_m));

  std::vector<Var> pool;
  for (Var v : order)
    if (planted.allow_manifestations || std::find(mans.begin(), mans.end(), v) == mans.end()) pool.push_back(v);
  rng.shuffle(pool);
  std::vector<Var> backdoor(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(planted.k, pool.size())));
  std::sort(backdoor.begin(), backdoor.end());
  std::vector<Var> rest;
  for (std::uint32_t v = 0; v < n; ++v)
    if (!std::binary_search(backdoor.begin(), backdoor.end(), Var(v))) rest.emplace_back(v);

  const std::size_t in_class_cap = planted.base_class == BaseClass::Krom ? 2 : limits.width;
  const std::size_t num_clauses = rng.between(1, limits.clauses);
  Cnf theory(n);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    const std::size_t width = rng.between(1, limits.width);
    const std::size_t from_backdoor = rng.between(0, std::min(width, backdoor.size()));
    const std::size_t outside = std::min({width - from_backdoor, in_class_cap, rest.size()});

    std::vector<Var> b_vars = backdoor, r_vars = rest;
    rng.shuffle(b_vars);
    rng.shuffle(r_vars);
    std::vector<Lit> lits;
    for (std::size_t i = 0; i < from_backdoor; ++i) lits.emplace_back(b_vars[i], rng.coin());
    bool head_used = false;
    for (std::size_t i = 0; i < outside; ++i) {
      bool positive = rng.coin();
      if (planted.base_class == BaseClass::Horn && positive) {
        if (head_used) positive = false;
        head_used = true;
      }
      lits.emplace_back(r_vars[i], positive);
    }
    if (lits.empty()) lits.emplace_back(r_vars.empty() ? b_vars[0] : r_vars[0], rng.coin());
    theory.add(Clause(std::move(lits)));
  }

  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v));
  AbductionInstance instance(std::move(names), std::move(hyps), std::move(mans), std::move(theory));
  return GeneratedInstance{std::move(instance), BackdoorSet{std::move(backdoor), planted.base_class}};
}

}  // namespace abd
