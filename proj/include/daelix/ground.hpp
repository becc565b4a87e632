// Grounding: quantifier instantiation over the finite domain, objective
// constant folding, and the hash-consed ground formula pool shared by the
// semantic operators.

#ifndef DAELIX_GROUND_HPP
#define DAELIX_GROUND_HPP

#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/theory.hpp"

namespace daelix {

// A ground subjective atom P(d1,...,dk); arguments are domain indices.
struct GroundAtom {
  std::string pred;
  std::vector<int> args;
  bool operator<(const GroundAtom& o) const {
    if (pred != o.pred) return pred < o.pred;
    return args < o.args;
  }
  bool operator==(const GroundAtom& o) const {
    return pred == o.pred && args == o.args;
  }
};

// Ordered list of all ground subjective atoms occurring in a grounded
// theory, in canonical order (predicate name, then argument tuple by domain
// index).  Every bitset layout downstream follows this order.
class GroundAtomTable {
 public:
  int index_of(const GroundAtom& a) const;  // -1 if absent
  const GroundAtom& atom(int i) const { return atoms_.at(i); }
  int size() const { return static_cast<int>(atoms_.size()); }
  std::string name(int i, const ObjectiveStructure& o) const;

  // Builds the table from a set of atoms (sorts canonically).
  static GroundAtomTable build(std::vector<GroundAtom> atoms);

 private:
  std::vector<GroundAtom> atoms_;
  std::map<GroundAtom, int> index_;
};

enum class GfKind : uint8_t { True, False, Atom, Not, And, Knows };

// Hash-consed ground formula node: structurally equal subtrees share a node,
// so pointer identity is structural identity and per-node caches are dense
// vectors indexed by id.
struct Gf {
  GfKind kind;
  int32_t arg = -1;  // Atom: atom index; Knows: agent index
  const Gf* lhs = nullptr;
  const Gf* rhs = nullptr;
  uint32_t id = 0;
};

class GfPool {
 public:
  const Gf* truth(bool v);
  const Gf* atom(int index);
  const Gf* negation(const Gf* a);           // folds constants
  const Gf* conj(const Gf* a, const Gf* b);  // folds constants
  const Gf* knows(int agent, const Gf* a);   // folds K true -> true
  uint32_t size() const { return next_id_; }

 private:
  const Gf* intern(Gf n);
  std::deque<Gf> nodes_;
  std::map<std::tuple<uint8_t, int32_t, const Gf*, const Gf*>, const Gf*> memo_;
  uint32_t next_id_ = 0;
};

// A variable-free propositional distributed theory over ground subjective
// atoms; modal operators carry agent indices.  The single-agent case doubles
// as the AEL target.
struct GroundTheory {
  std::shared_ptr<GfPool> pool;
  GroundAtomTable atoms;
  std::vector<std::string> agent_names;
  std::vector<std::vector<const Gf*>> sentences;          // per agent
  std::shared_ptr<const ObjectiveStructure> objective;    // domain, for names

  int agent_count() const { return static_cast<int>(agent_names.size()); }
  std::string atom_name(int i) const;
};

// Instantiates quantifiers over the domain, evaluates objective atoms and
// terms under I_o, replaces K_t with t outside the agent set by false, and
// interns the result.  Extra sentences (queries) are grounded against the
// same atom table and returned in extra_out.
GroundTheory ground_theory(const DistributedTheory& t, const Config& cfg = {},
                           const std::vector<FormulaPtr>& extra = {},
                           std::vector<const Gf*>* extra_out = nullptr);

// Grounds a single-knower (AEL) theory: one agent, unindexed K.
GroundTheory ground_single_knower(const Vocabulary& vocab,
                                  const ObjectiveStructure& objective,
                                  const std::vector<FormulaPtr>& sentences,
                                  const Config& cfg = {});

// Grounds one sentence against an existing ground theory.  Atoms outside the
// existing table are rejected.
const Gf* ground_sentence(const GroundTheory& gt, const DistributedTheory& t,
                          const FormulaPtr& sentence, const Config& cfg = {});

// Renders a ground formula back to formula syntax.
std::string to_string(const GroundTheory& gt, const Gf* f);
FormulaPtr to_formula(const GroundTheory& gt, const Gf* f);

}  // namespace daelix

#endif
