#include "abd/subset_min.hpp"

#include "abd/error.hpp"
#include "abd/horn.hpp"
#include "abd/krom.hpp"

namespace abd {

namespace {

void add_copy_block(EncodingBuilder& builder, const AbductionInstance& p, Var h, bool all_false) {
  std::vector<Var> copy;
  copy.reserve(p.num_vars());
  for (std::uint32_t v = 0; v < p.num_vars(); ++v) copy.push_back(builder.add_var({RoleKind::Copy, v, h.index(), 0}));
  auto renamed = [&](Lit l) { return Lit(copy[l.var().index()], l.positive()); };

  const Lit off = Lit::neg(builder.selector(h));
  auto guarded = [&](std::vector<Lit> lits) {
    lits.push_back(off);
    builder.require_clause(Clause(std::move(lits)));
  };

  for (const auto& c : p.theory().clauses()) {
    std::vector<Lit> lits;
    for (Lit l : c) lits.push_back(renamed(l));
    guarded(std::move(lits));
  }
  guarded({Lit::neg(copy[h.index()])});
  for (Var v : p.hyps())
    if (v != h) guarded({Lit::neg(builder.selector(v)), Lit::pos(copy[v.index()])});
  if (all_false) {
    for (Var m : p.mans()) guarded({Lit::neg(copy[m.index()])});
  } else {
    std::vector<Lit> some_false;
    for (Var m : p.mans()) some_false.push_back(Lit::neg(copy[m.index()]));
    guarded(std::move(some_false));
  }
}

Encoding encode(const AbductionInstance& p, const BackdoorSet& b, Var h_star, const SubsetMinOptions& options,
                BaseClass cls) {
  if (!p.is_hyp(h_star)) throw InvalidArgument("'" + p.name(h_star) + "' is not a hypothesis");
  if (b.variables.size() > options.max_backdoor)
    throw ResourceLimit("backdoor of size " + std::to_string(b.variables.size()) + " exceeds the encoding ceiling " +
                        std::to_string(options.max_backdoor));
  ensure_backdoor(p, b, cls);

  EncodingBuilder builder(p);
  builder.add_selectors();
  builder.require_theory();
  builder.require_clause(Clause{Lit::pos(builder.selector(h_star))});
  EncodingStats stats;
  stats.backdoor_size = b.variables.size();
  stats.assignments = std::size_t{1} << b.variables.size();
  if (cls == BaseClass::Horn) {
    stats.steps = add_horn_entailment(builder, p, b, options.strict_paper);
  } else {
    add_krom_entailment(builder, p, b, options.strict_paper);
  }
  for (Var h : p.hyps()) add_copy_block(builder, p, h, options.all_manifestations_false);
  return builder.finish(Projection::Selectors, stats);
}

}  // namespace

Encoding encode_horn_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                               const SubsetMinOptions& options) {
  return encode(p, b, h_star, options, BaseClass::Horn);
}

Encoding encode_krom_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                               const SubsetMinOptions& options) {
  return encode(p, b, h_star, options, BaseClass::Krom);
}

Encoding encode_subsetmin(const AbductionInstance& p, const BackdoorSet& b, Var h_star,
                          const SubsetMinOptions& options) {
  return encode(p, b, h_star, options, b.base_class);
}

Solution decode_minimal_solution(const Encoding& enc, const std::vector<bool>& model) {
  if (enc.projection != Projection::Selectors) throw InvalidArgument("encoding has no selector projection");
  return decode_solution(enc, model);
}

}  // namespace abd
