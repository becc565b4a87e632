#include "daelix/formula.hpp"

#include <cassert>
#include <sstream>

namespace daelix {

Term Term::var(std::string name) {
  Term t;
  t.is_variable = true;
  t.head = std::move(name);
  return t;
}

Term Term::app(std::string fn, std::vector<Term> args) {
  Term t;
  t.head = std::move(fn);
  t.args = std::move(args);
  return t;
}

bool Term::operator==(const Term& o) const {
  return is_variable == o.is_variable && head == o.head && args == o.args;
}

bool Term::operator<(const Term& o) const {
  if (is_variable != o.is_variable) return is_variable < o.is_variable;
  if (head != o.head) return head < o.head;
  return args < o.args;
}

std::string Term::str() const {
  if (args.empty()) return head;
  std::string s = head + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].str();
  }
  return s + ")";
}

FormulaPtr Formula::atom(std::string pred, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atom;
  f->pred = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaPtr Formula::truth(bool value) {
  return atom(value ? builtin::kTrue : builtin::kFalse, {});
}

FormulaPtr Formula::equals(Term a, Term b) {
  return atom(builtin::kEquals, {std::move(a), std::move(b)});
}

FormulaPtr Formula::negation(FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Not;
  n->lhs = std::move(f);
  return n;
}

static FormulaPtr binary(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<Formula>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::And, std::move(a), std::move(b));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Or, std::move(a), std::move(b));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Implies, std::move(a), std::move(b));
}
FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Iff, std::move(a), std::move(b));
}

FormulaPtr Formula::forall(std::string var, FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Forall;
  n->var = std::move(var);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Exists;
  n->var = std::move(var);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr Formula::knows(Term index, FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Knows;
  n->index = std::move(index);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr Formula::knows_unindexed(FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Knows;
  n->lhs = std::move(f);
  return n;
}

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return Formula::negation(desugar(f->lhs));
    case FormulaKind::And:
      return Formula::conj(desugar(f->lhs), desugar(f->rhs));
    case FormulaKind::Or:
      // a | b  ==  ~(~a & ~b)
      return Formula::negation(Formula::conj(
          Formula::negation(desugar(f->lhs)),
          Formula::negation(desugar(f->rhs))));
    case FormulaKind::Implies:
      // a => b  ==  ~(a & ~b)
      return Formula::negation(
          Formula::conj(desugar(f->lhs), Formula::negation(desugar(f->rhs))));
    case FormulaKind::Iff: {
      // a <=> b  ==  (a => b) & (b => a)
      auto a = desugar(f->lhs);
      auto b = desugar(f->rhs);
      auto ab = Formula::negation(Formula::conj(a, Formula::negation(b)));
      auto ba = Formula::negation(Formula::conj(b, Formula::negation(a)));
      return Formula::conj(ab, ba);
    }
    case FormulaKind::Forall:
      return Formula::forall(f->var, desugar(f->lhs));
    case FormulaKind::Exists:
      // exists x: a  ==  ~forall x: ~a
      return Formula::negation(
          Formula::forall(f->var, Formula::negation(desugar(f->lhs))));
    case FormulaKind::Knows: {
      auto n = std::make_shared<Formula>();
      n->kind = FormulaKind::Knows;
      n->index = f->index;
      n->lhs = desugar(f->lhs);
      return n;
    }
  }
  assert(false && "unreachable");
  return f;
}

bool is_desugared(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return true;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Knows:
      return is_desugared(f->lhs);
    case FormulaKind::And:
      return is_desugared(f->lhs) && is_desugared(f->rhs);
    default:
      return false;
  }
}

namespace {

// Precedence-aware printer: ~, K[.], quantifiers bind tightest, then &, |,
// =>, <=>.  Quantifier bodies extend as far right as possible.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
  }
}

void print(const Formula& f, std::ostream& os, int parent_prec) {
  int prec = precedence(f.kind);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (f.kind) {
    case FormulaKind::Atom:
      if (f.pred == builtin::kEquals) {
        os << f.args[0].str() << " = " << f.args[1].str();
      } else {
        os << f.pred;
        if (!f.args.empty()) {
          os << "(";
          for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) os << ",";
            os << f.args[i].str();
          }
          os << ")";
        }
      }
      break;
    case FormulaKind::Not:
      os << "~";
      print(*f.lhs, os, 6);
      break;
    case FormulaKind::And:
      print(*f.lhs, os, prec);
      os << " & ";
      print(*f.rhs, os, prec + 1);
      break;
    case FormulaKind::Or:
      print(*f.lhs, os, prec);
      os << " | ";
      print(*f.rhs, os, prec + 1);
      break;
    case FormulaKind::Implies:
      print(*f.lhs, os, prec + 1);
      os << " => ";
      print(*f.rhs, os, prec);
      break;
    case FormulaKind::Iff:
      print(*f.lhs, os, prec);
      os << " <=> ";
      print(*f.rhs, os, prec + 1);
      break;
    case FormulaKind::Forall:
      os << "forall " << f.var << ": ";
      print(*f.lhs, os, 0);
      break;
    case FormulaKind::Exists:
      os << "exists " << f.var << ": ";
      print(*f.lhs, os, 0);
      break;
    case FormulaKind::Knows:
      if (f.index)
        os << "K[" << f.index->str() << "] ";
      else
        os << "K ";
      print(*f.lhs, os, 6);
      break;
  }
  if (paren) os << ")";
}

// Equality atoms print without parentheses only at the atom level, so a
// quantifier body "x = y" needs no special casing; parenthesisation of "= "
// arguments never arises because terms carry their own brackets.

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(f, os, 0);
  return os.str();
}

std::string to_string(const FormulaPtr& f) { return to_string(*f); }

static void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Atom: {
      // walk terms
      struct {
        void operator()(const Term& t, const std::set<std::string>& bound,
                        std::set<std::string>& out) const {
          if (t.is_variable) {
            if (!bound.count(t.head)) out.insert(t.head);
          } else {
            for (const auto& a : t.args) (*this)(a, bound, out);
          }
        }
      } walk;
      for (const auto& a : f.args) walk(a, bound, out);
      break;
    }
    case FormulaKind::Not:
      collect_free(*f.lhs, bound, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      collect_free(*f.lhs, bound, out);
      collect_free(*f.rhs, bound, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool fresh = bound.insert(f.var).second;
      collect_free(*f.lhs, bound, out);
      if (fresh) bound.erase(f.var);
      break;
    }
    case FormulaKind::Knows: {
      if (f.index) {
        struct {
          void operator()(const Term& t, const std::set<std::string>& bound,
                          std::set<std::string>& out) const {
            if (t.is_variable) {
              if (!bound.count(t.head)) out.insert(t.head);
            } else {
              for (const auto& a : t.args) (*this)(a, bound, out);
            }
          }
        } walk;
        walk(*f.index, bound, out);
      }
      collect_free(*f.lhs, bound, out);
      break;
    }
  }
}

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(*f, bound, out);
  return out;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Atom:
      return a->pred == b->pred && a->args == b->args;
    case FormulaKind::Not:
      return equal(a->lhs, b->lhs);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return a->var == b->var && equal(a->lhs, b->lhs);
    case FormulaKind::Knows:
      if (a->index.has_value() != b->index.has_value()) return false;
      if (a->index && !(*a->index == *b->index)) return false;
      return equal(a->lhs, b->lhs);
  }
  return false;
}

static void polarity_walk(const Formula& f, bool positive,
                          std::vector<int>& path,
                          std::vector<PolarityEntry>& out) {
  switch (f.kind) {
    case FormulaKind::Atom:
      break;
    case FormulaKind::Not:
      path.push_back(0);
      polarity_walk(*f.lhs, !positive, path, out);
      path.pop_back();
      break;
    case FormulaKind::And:
      path.push_back(0);
      polarity_walk(*f.lhs, positive, path, out);
      path.back() = 1;
      polarity_walk(*f.rhs, positive, path, out);
      path.pop_back();
      break;
    case FormulaKind::Forall:
      path.push_back(0);
      polarity_walk(*f.lhs, positive, path, out);
      path.pop_back();
      break;
    case FormulaKind::Knows:
      // occurrences nested inside another modal operator are not reported
      out.push_back(PolarityEntry{path, &f, positive});
      break;
    default:
      // polarity is defined on the desugared fragment only
      break;
  }
}

std::vector<PolarityEntry> polarity_of_occurrences(const FormulaPtr& f) {
  std::vector<PolarityEntry> out;
  std::vector<int> path;
  polarity_walk(*f, true, path, out);
  return out;
}

}  // namespace daelix
