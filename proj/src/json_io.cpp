#include "daelix/json_io.hpp"

namespace daelix {

using nlohmann::json;

json world_set_to_json(const GroundTheory& gt, const WorldSet& w) {
  int n = gt.atoms.size();
  json out;
  if (!w.empty()) {
    // literal-determined iff the set equals the models of its forced literals
    WorldSet mod = WorldSet::all(n);
    std::vector<std::string> lits;
    for (int k = 0; k < n; ++k) {
      WorldSet pattern = WorldSet::atom_pattern(n, k);
      if (w.subset_of(pattern)) {
        mod &= pattern;
        lits.push_back(gt.atom_name(k));
      } else if (w.subset_of(pattern.complement())) {
        mod &= pattern.complement();
        lits.push_back("~" + gt.atom_name(k));
      }
    }
    if (mod == w) {
      out["literals"] = lits;
      return out;
    }
  }
  json worlds = json::array();
  w.for_each_world([&](Interp i) {
    json world = json::array();
    for (int k = 0; k < n; ++k)
      if ((i >> k) & 1) world.push_back(gt.atom_name(k));
    worlds.push_back(std::move(world));
  });
  out["worlds"] = std::move(worlds);
  return out;
}

json dpws_to_json(const GroundTheory& gt, const Dpws& q) {
  json out = json::object();
  for (int a = 0; a < q.agent_count(); ++a)
    out[gt.agent_names[a]] = world_set_to_json(gt, q.per_agent[a]);
  return out;
}

json belief_pair_to_json(const GroundTheory& gt, const BeliefPair& b) {
  json out;
  out["conservative"] = dpws_to_json(gt, b.conservative);
  out["liberal"] = dpws_to_json(gt, b.liberal);
  return out;
}

namespace {

std::string knows_key(const GroundTheory& gt, int agent, int atom,
                      bool positive) {
  return "K[" + gt.agent_names[agent] + "] " + (positive ? "" : "~") +
         gt.atom_name(atom);
}

}  // namespace

json answers_to_json(const SetEvaluator& ev, const std::vector<Dpws>& models) {
  const GroundTheory& gt = ev.theory();
  json out = json::object();
  for (int a = 0; a < gt.agent_count(); ++a)
    for (int atom = 0; atom < gt.atoms.size(); ++atom)
      for (bool positive : {true, false}) {
        const Gf* lit = gt.pool->atom(atom);
        if (!positive) lit = gt.pool->negation(lit);
        const Gf* k = gt.pool->knows(a, lit);
        bool all_true = true, all_false = true;
        for (const auto& q : models) {
          bool v = eval2(ev, k, q, 0);
          all_true = all_true && v;
          all_false = all_false && !v;
        }
        Truth t = models.empty() ? Truth::Unknown
                  : all_true    ? Truth::True
                  : all_false   ? Truth::False
                                : Truth::Unknown;
        out[knows_key(gt, a, atom, positive)] = std::string(1, truth_char(t));
      }
  return out;
}

json answers_to_json(const SetEvaluator& ev, const BeliefPair& b) {
  const GroundTheory& gt = ev.theory();
  json out = json::object();
  for (int a = 0; a < gt.agent_count(); ++a)
    for (int atom = 0; atom < gt.atoms.size(); ++atom)
      for (bool positive : {true, false}) {
        const Gf* lit = gt.pool->atom(atom);
        if (!positive) lit = gt.pool->negation(lit);
        const Gf* k = gt.pool->knows(a, lit);
        out[knows_key(gt, a, atom, positive)] =
            std::string(1, truth_char(eval3(ev, k, b, 0)));
      }
  return out;
}

json decisions_to_json(const AccessDecisionSet& d) {
  json out = json::object();
  for (const auto& [principal, value] : d.decisions)
    out[principal] = std::string(1, truth_char(value));
  return out;
}

json trace_to_json(const GroundTheory& gt,
                   const std::vector<TraceEvent>& trace) {
  json out = json::array();
  for (const auto& e : trace) {
    json ev;
    ev["asker"] = gt.agent_names[e.asker];
    ev["askee"] = gt.agent_names[e.askee];
    ev["query"] = e.query;
    ev["answer"] = std::string(1, truth_char(e.answer));
    ev["remote"] = e.remote;
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace daelix
