// JSON renderings of world structures, belief pairs, model sets, access
// decisions, and query traces.

#ifndef DAELIX_JSON_IO_HPP
#define DAELIX_JSON_IO_HPP

#include <json.hpp>

#include "daelix/query.hpp"
#include "daelix/scenario.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

// {"literals": [...]} when the set is exactly the models of a literal set,
// {"worlds": [[atoms]...]} otherwise.
nlohmann::json world_set_to_json(const GroundTheory& gt, const WorldSet& w);
nlohmann::json dpws_to_json(const GroundTheory& gt, const Dpws& q);
nlohmann::json belief_pair_to_json(const GroundTheory& gt, const BeliefPair& b);

// Skeptical answers for every K[A] literal.
nlohmann::json answers_to_json(const SetEvaluator& ev,
                               const std::vector<Dpws>& models);
nlohmann::json answers_to_json(const SetEvaluator& ev, const BeliefPair& b);

nlohmann::json decisions_to_json(const AccessDecisionSet& d);
nlohmann::json trace_to_json(const GroundTheory& gt,
                             const std::vector<TraceEvent>& trace);

}  // namespace daelix

#endif
