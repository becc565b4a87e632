// Semantic operators and the five model constructions: knowledge revision,
// the approximator, stable revision, Kripke-Kleene, well-founded, and the
// supported / stable / partial-stable model enumerations.

#ifndef DAELIX_ENGINE_HPP
#define DAELIX_ENGINE_HPP

#include <optional>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

// D_T: per agent, the worlds in which the agent's theory evaluates to true.
Dpws revise(const SetEvaluator& ev, const Dpws& q);

// The two half-operators of the approximator.  Defined on arbitrary pairs
// (consistent or not); both are <=_p-monotone.
Dpws conservative_revision(const SetEvaluator& ev, const BeliefPair& b);
Dpws liberal_revision(const SetEvaluator& ev, const BeliefPair& b);

// D*_T = (conservative, liberal) revision.  Rejects inconsistent input.
BeliefPair approximate(const SetEvaluator& ev, const BeliefPair& b);

// S(Q): least fixpoint of the conservative revision with the liberal side
// fixed at Q, reached by Kleene iteration from no-knowledge.
Dpws stable_revise(const SetEvaluator& ev, const Dpws& q);

// <=_p-least fixpoint of the approximator.
BeliefPair kripke_kleene(const SetEvaluator& ev);

// <=_p-least fixpoint of (x,y) -> (S(y),S(x)); always consistent.
BeliefPair well_founded(const SetEvaluator& ev);

bool is_supported_model(const SetEvaluator& ev, const Dpws& q);
bool is_stable_model(const SetEvaluator& ev, const Dpws& q);
bool is_partial_stable_model(const SetEvaluator& ev, const BeliefPair& b);

// Exhaustive enumerations at desk scale.  Supported models are found by
// enumerating the finitely many valuations of the modal subformulas (every
// fixpoint of D_T is determined by one); results are canonically sorted.
std::vector<Dpws> supported_models(const SetEvaluator& ev,
                                   const Config& cfg = {});
std::vector<Dpws> stable_models(const SetEvaluator& ev, const Config& cfg = {});
std::vector<BeliefPair> partial_stable_models(const SetEvaluator& ev,
                                              const Config& cfg = {});

// A replayable well-founded induction.  Steps either apply the approximator
// (optionally to one agent's components) or tighten the liberal bound, the
// strongest tightening being the stable revision of the conservative bound.
// Every step is checked to be a legal refinement; the schedule is applied
// cyclically until the pair is partial stable.
struct ReplayStep {
  enum class Kind {
    Approximate,          // (x,y) -> D*(x,y)
    TightenConservative,  // x[A] -> D^c(x,y)[A]   (all agents if unset)
    TightenLiberal,       // y[A] -> D^l(x,y)[A]   (all agents if unset)
    StableTighten         // y -> S(x)
  };
  Kind kind;
  std::optional<int> agent;
};
using Schedule = std::vector<ReplayStep>;

BeliefPair wf_induction_replay(const SetEvaluator& ev, const Schedule& s);

// Distinct modal subformulas occurring in the theory, in interning order.
std::vector<const Gf*> modal_subformulas(const GroundTheory& gt);

}  // namespace daelix

#endif
