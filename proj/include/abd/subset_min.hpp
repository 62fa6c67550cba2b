#pragma once

// Encodings for "is h* in some subset-minimal solution": the decoupled
// solver formula over selectors s_h, plus for every h a block of copied
// variables that, when s_h holds, exhibits a model of T ∪ (S \ {h}) in
// which h and some manifestation are false.

#include "abd/backdoor.hpp"
#include "abd/encoding.hpp"
#include "abd/instance.hpp"

namespace abd {

struct SubsetMinOptions {
  // Unrepaired solver part (see encode_horn_solv / encode_krom_solv).
  bool strict_paper = false;
  // Copy blocks falsify every manifestation (unit clauses) instead of at
  // least one. This misses minimal solutions when M has several elements.
  bool all_manifestations_false = false;
  std::size_t max_backdoor = 16;
};

// Both unrepaired variants follow `strict_paper` of the solver options.
inline SubsetMinOptions subset_min_options(const EncodeOptions& o) {
  return {o.strict_paper, o.strict_paper, o.max_backdoor};
}

Encoding encode_horn_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                               const SubsetMinOptions& options = {});
Encoding encode_krom_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                               const SubsetMinOptions& options = {});

// Dispatches on b.base_class.
Encoding encode_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                          const SubsetMinOptions& options = {});

// Reads the selectors. Throws InvalidArgument for a non-model or an encoding
// without selector projection.
Solution decode_minimal_solution(const Encoding& enc, const std::vector<bool>& model);

}  // namespace abd
