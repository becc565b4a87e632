// Terms and the formula AST.  Parsed formulas may use the abbreviation
// connectives; desugar() rewrites them into the five-kind core fragment
// (atoms, negation, conjunction, universal quantification, K_t).

#ifndef DAELIX_FORMULA_HPP
#define DAELIX_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace daelix {

namespace builtin {
inline const std::string kTrue = "true";
inline const std::string kFalse = "false";
inline const std::string kEquals = "=";
inline const std::string kAgentPred = "Apred";
}  // namespace builtin

struct Term {
  bool is_variable = false;
  std::string head;        // variable name, or function/constant symbol
  std::vector<Term> args;  // empty for variables and constants

  static Term var(std::string name);
  static Term app(std::string fn, std::vector<Term> args = {});

  bool operator==(const Term& o) const;
  bool operator<(const Term& o) const;
  std::string str() const;
};

enum class FormulaKind : uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Knows
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  FormulaKind kind;
  std::string pred;             // Atom
  std::vector<Term> args;       // Atom
  FormulaPtr lhs, rhs;          // children (rhs only for binary kinds)
  std::string var;              // Forall / Exists
  std::optional<Term> index;    // Knows; nullopt is the unindexed AEL K

  static FormulaPtr atom(std::string pred, std::vector<Term> args = {});
  static FormulaPtr truth(bool value);
  static FormulaPtr equals(Term a, Term b);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(std::string var, FormulaPtr f);
  static FormulaPtr exists(std::string var, FormulaPtr f);
  static FormulaPtr knows(Term index, FormulaPtr f);
  static FormulaPtr knows_unindexed(FormulaPtr f);

  bool is_atom(const std::string& name) const {
    return kind == FormulaKind::Atom && pred == name;
  }
};

// Rewrites |, =>, <=>, exists into the core fragment.  true/false are
// builtin objective atoms and survive as such.
FormulaPtr desugar(const FormulaPtr& f);

bool is_desugared(const FormulaPtr& f);

// Canonical text rendering; parseable by the theory parser.
std::string to_string(const FormulaPtr& f);
std::string to_string(const Formula& f);

// Free variables of a formula (variables not bound by any quantifier).
std::set<std::string> free_variables(const FormulaPtr& f);

// Structural equality.
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Polarity analysis over a desugared formula.  Reports every K-node that is
// not nested inside another K-node, together with the sign of its occurrence
// (negation flips, conjunction and quantification preserve).
struct PolarityEntry {
  std::vector<int> path;     // child indices from the root
  const Formula* occurrence; // the Knows node
  bool positive;
};
std::vector<PolarityEntry> polarity_of_occurrences(const FormulaPtr& f);

}  // namespace daelix

#endif
