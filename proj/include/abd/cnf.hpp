#pragma once

// Literals, clauses, CNF formulas, partial assignments and the handful of
// operations the backdoor machinery is built on: reducts, class membership
// tests, evaluation and resolution closure.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace abd {

class Var {
 public:
  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t index) : index_(index) {}
  constexpr std::uint32_t index() const { return index_; }
  friend constexpr auto operator<=>(Var, Var) = default;

 private:
  std::uint32_t index_ = 0;
};

// code = 2 * var + polarity, so sorting by code orders by variable index
// with the negative literal first.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v.index() + (positive ? 1u : 0u)) {}
  static constexpr Lit pos(Var v) { return Lit(v, true); }
  static constexpr Lit neg(Var v) { return Lit(v, false); }
  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return Var(code_ >> 1); }
  constexpr bool positive() const { return code_ & 1u; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  std::uint32_t code_ = 0;
};

// Duplicate-free literal set in canonical order. A clause with no literals is
// the empty clause; tautological clauses (x and -x) are representable.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}
  explicit Clause(std::vector<Lit> lits);

  std::span<const Lit> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  bool is_tautological() const;
  std::size_t positive_count() const;
  // Largest variable index + 1, 0 for the empty clause.
  std::uint32_t var_bound() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) { return a.lits_ <=> b.lits_; }

 private:
  std::vector<Lit> lits_;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const noexcept;
};

using ClauseSet = std::unordered_set<Clause, ClauseHash>;

class Cnf {
 public:
  Cnf() = default;
  explicit Cnf(std::size_t num_vars) : num_vars_(num_vars) {}
  Cnf(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

  // Grows the universe so that every variable of `c` belongs to it.
  void add(Clause c);
  void reserve_vars(std::size_t n);
  // Variables that occur in at least one clause, ascending.
  std::vector<Var> occurring_vars() const;
  bool has_empty_clause() const;

  friend bool operator==(const Cnf&, const Cnf&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// Mapping from a subset of the universe to {0,1}. Unassigned lookups return
// nullopt, never false.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t universe) : values_(universe, kUnassigned) {}

  std::size_t universe() const { return values_.size(); }
  void set(Var v, bool value);
  void unset(Var v);
  std::optional<bool> get(Var v) const;
  std::optional<bool> value(Lit l) const;
  bool assigned(Var v) const { return get(v).has_value(); }
  std::vector<Var> domain() const;
  bool is_total_on(const Cnf& phi) const;

  // Total assignment over `universe` variables read from the low bits of
  // `bits` (bit i -> variable i). Used by enumeration loops.
  static PartialAssignment from_bits(std::size_t universe, std::uint64_t bits);

 private:
  static constexpr std::int8_t kUnassigned = -1;
  std::vector<std::int8_t> values_;
};

// phi[tau]: satisfied clauses removed, falsified literals deleted. A clause
// whose literals are all falsified survives as the empty clause.
Cnf reduct(const Cnf& phi, const PartialAssignment& tau);

// Tautological clauses are satisfied by every assignment and therefore never
// count against membership.
bool is_horn(const Cnf& phi);
bool is_krom(const Cnf& phi);

// True iff every non-tautological clause has a literal set to 1. Throws
// InvalidArgument when tau is not total on var(phi).
bool evaluate(const Cnf& phi, const PartialAssignment& tau);

struct ClosureLimits {
  std::size_t max_clauses = 200000;
};

// Res(phi): closure under binary resolution, tautologies dropped, identical
// clauses stored once, no subsumption. Throws ResourceLimit when the closure
// outgrows `limits`.
ClauseSet resolution_closure(const Cnf& phi, ClosureLimits limits = {});

}  // namespace abd

template <>
struct std::hash<abd::Var> {
  std::size_t operator()(abd::Var v) const noexcept { return v.index(); }
};

template <>
struct std::hash<abd::Lit> {
  std::size_t operator()(abd::Lit l) const noexcept { return l.code(); }
};
