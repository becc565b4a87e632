// The dAEL -> AEL mapping: formula/theory translation over the primed
// vocabulary (subjective predicates gain an agent slot), the semantic
// translations of structures, world structures and belief pairs, and the
// permaconsistency check.  AEL itself is the one-agent case of the engine.

#ifndef DAELIX_AEL_HPP
#define DAELIX_AEL_HPP

#include <string>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/theory.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

struct AelTheory {
  Vocabulary vocab;               // primed: subjective arities + 1
  ObjectiveStructure objective;   // extends the source I_o
  std::vector<FormulaPtr> sentences;  // unindexed K; may use sugar
  int default_element = 0;            // delta, for defective terms
};

// tau_formula(s, phi); s names the agent whose knowledge scopes phi.
FormulaPtr translate_formula(const DistributedTheory& t, const Term& s,
                             const FormulaPtr& f);

// tau_theory: union over agents of tau_formula(A, .).
AelTheory translate_theory(const DistributedTheory& t);

GroundTheory ground_ael(const AelTheory& ael, const Config& cfg = {});

// tau_structure at the ground level: one world per choice of worlds for all
// agents.  AEL atoms whose agent slot is not an agent are false.
Interp translate_structure(const GroundTheory& gt_d, const GroundTheory& gt_a,
                           const DistributedTheory& t,
                           const std::vector<Interp>& per_agent);

// tau_pws: the product construction; empty iff the input is not universally
// consistent.
WorldSet translate_pws(const GroundTheory& gt_d, const GroundTheory& gt_a,
                       const DistributedTheory& t, const Dpws& q);

// tau_beliefpair: both bounds, componentwise.
BeliefPair translate_belief_pair(const GroundTheory& gt_d,
                                 const GroundTheory& gt_a,
                                 const DistributedTheory& t,
                                 const BeliefPair& b);

// Every t/f substitution of the modal occurrences not nested under another
// modal operator leaves each agent's residual theory satisfiable.
bool is_permaconsistent(const GroundTheory& gt, const Config& cfg = {});

// Text rendering of the translated theory (declarations plus an `ael { }`
// block with the unindexed K).
std::string ael_to_text(const AelTheory& ael);

}  // namespace daelix

#endif
