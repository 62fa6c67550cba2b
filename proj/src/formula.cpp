#include "abd/formula.hpp"

#include <algorithm>
#include <unordered_set>

#include "abd/error.hpp"

namespace abd {

struct Formula::Node {
  Kind kind;
  Var var;
  std::vector<Formula> children;
};

namespace {

template <class Node, class Kind>
std::shared_ptr<const Node> make_node(Kind kind, Var v, std::vector<Formula> children) {
  return std::make_shared<const Node>(Node{kind, v, std::move(children)});
}

}  // namespace

Formula Formula::constant(bool value) {
  static const Formula t(make_node<Node>(Kind::True, Var{}, {}));
  static const Formula f(make_node<Node>(Kind::False, Var{}, {}));
  return value ? t : f;
}

Formula Formula::atom(Var v) { return Formula(make_node<Node>(Kind::Atom, v, {})); }

Formula Formula::literal(Lit l) { return l.positive() ? atom(l.var()) : negate(atom(l.var())); }

Formula Formula::negate(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return constant(false);
    case Kind::False:
      return constant(true);
    case Kind::Not:
      return f.node_->children.front();
    default:
      return Formula(make_node<Node>(Kind::Not, Var{}, {f}));
  }
}

namespace {

// Shared body of conj/disj: `absorbing` is the constant that decides the
// whole node (false for and, true for or).
std::vector<Formula> flatten(std::vector<Formula> children, Formula::Kind self, bool absorbing, bool& absorbed) {
  std::vector<Formula> out;
  out.reserve(children.size());
  for (auto& c : children) {
    if (c.is_constant()) {
      if (c.is_true() == absorbing) {
        absorbed = true;
        return {};
      }
      continue;
    }
    if (c.kind() == self) {
      auto grand = c.children();
      out.insert(out.end(), grand.begin(), grand.end());
    } else {
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> children) {
  bool absorbed = false;
  auto kids = flatten(std::move(children), Kind::And, false, absorbed);
  if (absorbed) return constant(false);
  if (kids.empty()) return constant(true);
  if (kids.size() == 1) return kids.front();
  return Formula(make_node<Node>(Kind::And, Var{}, std::move(kids)));
}

Formula Formula::disj(std::vector<Formula> children) {
  bool absorbed = false;
  auto kids = flatten(std::move(children), Kind::Or, true, absorbed);
  if (absorbed) return constant(true);
  if (kids.empty()) return constant(false);
  if (kids.size() == 1) return kids.front();
  return Formula(make_node<Node>(Kind::Or, Var{}, std::move(kids)));
}

Formula Formula::implies(const Formula& lhs, const Formula& rhs) {
  if (lhs.is_false() || rhs.is_true()) return constant(true);
  if (lhs.is_true()) return rhs;
  if (rhs.is_false()) return negate(lhs);
  return Formula(make_node<Node>(Kind::Implies, Var{}, {lhs, rhs}));
}

Formula Formula::iff(const Formula& lhs, const Formula& rhs) {
  if (lhs.is_constant()) return lhs.is_true() ? rhs : negate(rhs);
  if (rhs.is_constant()) return rhs.is_true() ? lhs : negate(lhs);
  return Formula(make_node<Node>(Kind::Iff, Var{}, {lhs, rhs}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  return kind() == Kind::Atom || (kind() == Kind::Not && node_->children.front().kind() == Kind::Atom);
}

Lit Formula::as_literal() const {
  if (kind() == Kind::Atom) return Lit::pos(node_->var);
  if (is_literal()) return Lit::neg(node_->children.front().node_->var);
  throw InvalidArgument("formula is not a literal");
}

Var Formula::var() const { return node_->var; }

std::span<const Formula> Formula::children() const { return node_->children; }

std::size_t Formula::node_count() const {
  std::unordered_set<const void*> seen;
  std::vector<const Formula*> stack{this};
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (!seen.insert(f->id()).second) continue;
    for (const auto& c : f->children()) stack.push_back(&c);
  }
  return seen.size();
}

std::uint32_t Formula::var_bound() const {
  if (kind() == Kind::Atom) return var().index() + 1;
  std::uint32_t bound = 0;
  for (const auto& c : children()) bound = std::max(bound, c.var_bound());
  return bound;
}

bool Formula::eval(const PartialAssignment& tau) const {
  auto kids = children();
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom: {
      auto v = tau.get(var());
      if (!v) throw InvalidArgument("Formula::eval: unassigned atom");
      return *v;
    }
    case Kind::Not:
      return !kids[0].eval(tau);
    case Kind::And:
      return std::all_of(kids.begin(), kids.end(), [&](const Formula& c) { return c.eval(tau); });
    case Kind::Or:
      return std::any_of(kids.begin(), kids.end(), [&](const Formula& c) { return c.eval(tau); });
    case Kind::Implies:
      return !kids[0].eval(tau) || kids[1].eval(tau);
    case Kind::Iff:
      return kids[0].eval(tau) == kids[1].eval(tau);
  }
  return false;
}

void TseitinEncoder::assert_formula(const Formula& f) {
  using K = Formula::Kind;
  auto kids = f.children();
  switch (f.kind()) {
    case K::True:
      return;
    case K::False:
      out_.add(Clause{});
      return;
    case K::Atom:
      out_.add(Clause{Lit::pos(f.var())});
      return;
    case K::And:
      for (const auto& c : kids) assert_formula(c);
      return;
    case K::Or: {
      std::vector<Lit> lits;
      for (const auto& c : kids) lits.push_back(define(c));
      out_.add(Clause(std::move(lits)));
      return;
    }
    case K::Implies:
      assert_implication({kids[0]}, kids[1]);
      return;
    case K::Iff: {
      Lit a = define(kids[0]);
      Lit b = define(kids[1]);
      out_.add(Clause{~a, b});
      out_.add(Clause{a, ~b});
      return;
    }
    case K::Not: {
      const Formula& inner = kids[0];
      if (inner.kind() == K::Or) {
        for (const auto& c : inner.children()) assert_formula(Formula::negate(c));
      } else if (inner.kind() == K::And) {
        std::vector<Lit> lits;
        for (const auto& c : inner.children()) lits.push_back(~define(c));
        out_.add(Clause(std::move(lits)));
      } else {
        out_.add(Clause{~define(inner)});
      }
      return;
    }
  }
}

void TseitinEncoder::assert_implication(std::vector<Formula> premises, const Formula& conclusion) {
  using K = Formula::Kind;
  switch (conclusion.kind()) {
    case K::True:
      return;
    case K::And:
      for (const auto& c : conclusion.children()) assert_implication(premises, c);
      return;
    case K::Implies:
      premises.push_back(conclusion.children()[0]);
      assert_implication(std::move(premises), conclusion.children()[1]);
      return;
    default:
      break;
  }
  std::vector<Lit> lits;
  for (const auto& p : premises) {
    if (p.kind() == K::And) {
      for (const auto& c : p.children()) lits.push_back(~define(c));
    } else {
      lits.push_back(~define(p));
    }
  }
  if (conclusion.kind() == K::Or) {
    for (const auto& c : conclusion.children()) lits.push_back(define(c));
  } else if (!conclusion.is_false()) {
    lits.push_back(define(conclusion));
  }
  out_.add(Clause(std::move(lits)));
}

Lit TseitinEncoder::define(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind() == K::Atom) return Lit::pos(f.var());
  if (f.kind() == K::Not) return ~define(f.children()[0]);
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;

  const Lit a = Lit::pos(fresh_());
  auto kids = f.children();
  switch (f.kind()) {
    case K::True:
      out_.add(Clause{a});
      break;
    case K::False:
      out_.add(Clause{~a});
      break;
    case K::And: {
      std::vector<Lit> back{a};
      for (const auto& c : kids) {
        Lit l = define(c);
        out_.add(Clause{~a, l});
        back.push_back(~l);
      }
      out_.add(Clause(std::move(back)));
      break;
    }
    case K::Or: {
      std::vector<Lit> fwd{~a};
      for (const auto& c : kids) {
        Lit l = define(c);
        out_.add(Clause{a, ~l});
        fwd.push_back(l);
      }
      out_.add(Clause(std::move(fwd)));
      break;
    }
    case K::Implies: {
      Lit x = define(kids[0]);
      Lit y = define(kids[1]);
      out_.add(Clause{~a, ~x, y});
      out_.add(Clause{a, x});
      out_.add(Clause{a, ~y});
      break;
    }
    case K::Iff: {
      Lit x = define(kids[0]);
      Lit y = define(kids[1]);
      out_.add(Clause{~a, ~x, y});
      out_.add(Clause{~a, x, ~y});
      out_.add(Clause{a, x, y});
      out_.add(Clause{a, ~x, ~y});
      break;
    }
    case K::Atom:
    case K::Not:
      break;
  }
  memo_.emplace(f.id(), a);
  pinned_.push_back(f);
  return a;
}

TseitinCnf tseitin(const Formula& f, std::size_t num_vars) {
  TseitinCnf result;
  result.original_vars = std::max<std::size_t>(num_vars, f.var_bound());
  result.cnf.reserve_vars(result.original_vars);
  std::uint32_t next = static_cast<std::uint32_t>(result.original_vars);
  TseitinEncoder enc(result.cnf, [&] {
    Var v(next++);
    result.cnf.reserve_vars(next);
    return v;
  });
  enc.assert_formula(f);
  return result;
}

}  // namespace abd
