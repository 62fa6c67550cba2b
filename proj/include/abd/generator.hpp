#pragma once

// Seeded random instances with a planted strong backdoor.

#include <cstdint>

#include "abd/backdoor.hpp"
#include "abd/instance.hpp"

namespace abd {

struct InstanceLimits {
  std::size_t vars = 7;
  std::size_t hyps = 3;   // upper bound; the drawn |H| is in [1, hyps]
  std::size_t mans = 2;   // upper bound; the drawn |M| is in [1, mans]
  std::size_t clauses = 10;
  std::size_t width = 3;
};

struct PlantedBackdoor {
  BaseClass base_class = BaseClass::Horn;
  std::size_t k = 0;
  // Draw the planted variables from all of V rather than V \ M.
  bool allow_manifestations = false;
};

struct GeneratedInstance {
  AbductionInstance instance;
  BackdoorSet planted;
};

// Deterministic in `seed` on every platform. Every clause is in the class
// once the planted variables are removed, so `planted` is a strong backdoor.
// Throws InvalidArgument for infeasible limits.
GeneratedInstance random_instance(std::uint64_t seed, const InstanceLimits& limits, const PlantedBackdoor& planted);

}  // namespace abd
