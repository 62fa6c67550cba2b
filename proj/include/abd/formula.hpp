#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "abd/cnf.hpp"

namespace abd {

// Immutable propositional formula tree. Every factory folds constants
// eagerly, so a constant only ever appears as the whole formula. Subtrees are
// shared by pointer; the Tseitin pass gives each shared node one auxiliary.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff };

  static Formula constant(bool value);
  static Formula atom(Var v);
  static Formula literal(Lit l);
  static Formula negate(const Formula& f);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula implies(const Formula& lhs, const Formula& rhs);
  static Formula iff(const Formula& lhs, const Formula& rhs);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::True || kind() == Kind::False; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  // Atom, or Not over an atom.
  bool is_literal() const;
  Lit as_literal() const;
  Var var() const;
  std::span<const Formula> children() const;

  // Nodes of the tree counting shared subtrees once.
  std::size_t node_count() const;
  // Largest atom index + 1.
  std::uint32_t var_bound() const;
  // Requires every atom to be assigned.
  bool eval(const PartialAssignment& tau) const;

  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Formula operator!(const Formula& f) { return Formula::negate(f); }
inline Formula operator&&(const Formula& a, const Formula& b) { return Formula::conj({a, b}); }
inline Formula operator||(const Formula& a, const Formula& b) { return Formula::disj({a, b}); }

// Tseitin conversion into an existing CNF. Internal nodes get one auxiliary
// constrained by the full biconditional, so every auxiliary is a function of
// the original atoms. Conjunctions, disjunctions, implications and
// biconditionals at the top of an asserted formula are emitted directly
// instead of through an auxiliary.
class TseitinEncoder {
 public:
  using FreshVar = std::function<Var()>;
  TseitinEncoder(Cnf& out, FreshVar fresh) : out_(out), fresh_(std::move(fresh)) {}

  void assert_formula(const Formula& f);
  Lit define(const Formula& f);

 private:
  // Emits (and premises) -> conclusion, splitting conjunctive conclusions and
  // currying nested implications into a single clause where possible.
  void assert_implication(std::vector<Formula> premises, const Formula& conclusion);

  Cnf& out_;
  FreshVar fresh_;
  std::unordered_map<const void*, Lit> memo_;
  // Keeps memoised nodes alive so their addresses are not reused.
  std::vector<Formula> pinned_;
};

// Stand-alone conversion: atoms are variables 0..num_vars-1, auxiliaries are
// numbered from max(num_vars, f.var_bound()).
struct TseitinCnf {
  Cnf cnf;
  std::size_t original_vars = 0;
};
TseitinCnf tseitin(const Formula& f, std::size_t num_vars = 0);

}  // namespace abd
