// The polynomial rule fragment: rule-theory recognition, translation to a
// logic program over split atoms p_A^+ / p_A^-, Fitting / well-founded
// evaluation of the program, and the mapping back to literal-determined
// belief pairs.

#ifndef DAELIX_LP_HPP
#define DAELIX_LP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/truth.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

// Split atoms are indexed (atom, agent, polarity) -> (atom*agents + agent)*2
// + polarity; internal atoms (consistency closure) follow the base block.
struct LogicProgram {
  struct Rule {
    int head;
    const Gf* body;  // over split-atom leaves in `pool`
  };

  int n_atoms = 0;
  int n_agents = 0;
  int n_base = 0;   // 2 * n_atoms * n_agents
  int n_total = 0;  // base plus internal atoms
  std::vector<Rule> rules;
  std::shared_ptr<GfPool> pool;
  std::vector<std::string> names;  // per split/internal atom

  int split(int atom, int agent, bool positive) const {
    return (atom * n_agents + agent) * 2 + (positive ? 0 : 1);
  }
};

// Three-valued assignment over the base split atoms.
struct LpInterp3 {
  std::vector<Truth> values;
  bool operator==(const LpInterp3& o) const { return values == o.values; }
};

struct RuleCheck {
  bool ok = true;
  std::string offender;  // first non-rule sentence, pretty-printed
  int agent = -1;
};

// Checks that every sentence is a rule formula: optionally negated double
// negations aside, a literal fact or an implication whose head is a literal
// and whose guard is a modal complex (atoms only inside modal literals;
// conjunctions under K distribute; nested modal operators resolve to the
// innermost agent, following the derivation that accompanies the fragment).
RuleCheck is_rule_theory(const GroundTheory& gt);

// The four-step derivation: negation normalisation, literal replacement
// under the innermost modal operator, operator dropping, head splitting.
LogicProgram theory_to_lp(const GroundTheory& gt);

// Adds the consistency-closure rules: whenever both p_A^+ and p_A^- hold,
// agent A's world set is empty and A vacuously knows every literal.  This
// realizes the Mod-semantics of literal sets inside the program.
void add_consistency_closure(LogicProgram& p);

// Fitting's three-valued immediate consequence operator (one step).
LpInterp3 lp_fitting(const LogicProgram& p, const LpInterp3& i);

// Well-founded fixpoint via the alternating least-fixpoint construction.
LpInterp3 lp_well_founded(const LogicProgram& p);

// Literal-determined world structures, kept symbolic so they scale past the
// explicit-bitset cap.
struct LiteralDpws {
  // pos[agent][atom]: the agent knows the atom; neg: knows its negation
  std::vector<std::vector<bool>> pos, neg;

  int agent_count() const { return static_cast<int>(pos.size()); }
  bool agent_inconsistent(int agent) const;
  // K_agent l, two-valued: known iff the literal is in the set or the set
  // is inconsistent (empty world set knows everything).
  bool knows_literal(int agent, int atom, bool positive) const;
  WorldSet to_world_set(int agent, int n_atoms) const;
  Dpws to_dpws(int n_atoms) const;
  bool operator==(const LiteralDpws& o) const {
    return pos == o.pos && neg == o.neg;
  }
};

struct LiteralBeliefPair {
  LiteralDpws lower, upper;

  BeliefPair to_belief_pair(int n_atoms) const;
  // eval3 of K_agent l at the pair, without materializing world sets.
  Truth eval_knows(int agent, int atom, bool positive) const;
};

// The canonical mapping from split interpretations to literal-determined
// structures, extended pointwise to pairs.
LiteralDpws mu_two_valued(const LogicProgram& p, const std::vector<bool>& i);
LiteralBeliefPair mu(const LogicProgram& p, const LpInterp3& i);

// Saturates inconsistent agents: if some p_A^+ and p_A^- are both true on a
// side, every split atom of A becomes true on that side.  Interpretations
// with the same Mod-image collapse to a canonical representative.
LpInterp3 saturate(const LogicProgram& p, const LpInterp3& i);

// The fast path: translate, close, evaluate, map back.  Throws
// ValidationError when the theory is not a rule theory.
LiteralBeliefPair fast_well_founded(const GroundTheory& gt);

// Supported / stable models of a rule theory, enumerated over the head
// literals of the program (every revision image is literal-determined, so
// this is exhaustive).  Results are materialized and canonically sorted.
std::vector<Dpws> rule_supported_models(const SetEvaluator& ev,
                                        const Config& cfg = {});
std::vector<Dpws> rule_stable_models(const SetEvaluator& ev,
                                     const Config& cfg = {});

}  // namespace daelix

#endif
