#include "daelix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "daelix/engine.hpp"
#include "daelix/lp.hpp"
#include "daelix/query.hpp"

namespace daelix {

bool brute_enumeration_feasible(const GroundTheory& gt, const Config& cfg) {
  // (2^(2^n))^m candidate structures; keep the square within the cap so the
  // partial-stable pair scan stays tractable too.
  long double worlds = powl(2.0L, gt.atoms.size());
  long double count = powl(powl(2.0L, worlds), gt.agent_count());
  return count * count <= static_cast<long double>(cfg.enum_cap);
}

std::vector<Dpws> brute_all_dpws(const GroundTheory& gt) {
  int n = gt.atoms.size();
  int m = gt.agent_count();
  std::size_t worlds = std::size_t{1} << n;
  std::size_t sets = std::size_t{1} << worlds;
  std::vector<WorldSet> all_sets;
  all_sets.reserve(sets);
  for (std::size_t mask = 0; mask < sets; ++mask) {
    WorldSet w = WorldSet::none(n);
    for (std::size_t i = 0; i < worlds; ++i)
      if ((mask >> i) & 1) w.set(static_cast<Interp>(i));
    all_sets.push_back(std::move(w));
  }
  std::vector<Dpws> out;
  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    Dpws q;
    for (int a = 0; a < m; ++a) q.per_agent.push_back(all_sets[pick[a]]);
    out.push_back(std::move(q));
    int a = 0;
    while (a < m) {
      if (++pick[a] < all_sets.size()) break;
      pick[a] = 0;
      ++a;
    }
    if (a == m) break;
  }
  return out;
}

std::vector<Dpws> brute_supported(const SetEvaluator& ev) {
  std::vector<Dpws> out;
  for (const Dpws& q : brute_all_dpws(ev.theory()))
    if (revise(ev, q) == q) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Dpws> brute_stable(const SetEvaluator& ev) {
  std::vector<Dpws> out;
  for (const Dpws& q : brute_all_dpws(ev.theory()))
    if (revise(ev, q) == q && stable_revise(ev, q) == q) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BeliefPair> brute_partial_stable(const SetEvaluator& ev) {
  std::vector<Dpws> all = brute_all_dpws(ev.theory());
  std::map<Dpws, Dpws> stable;
  for (const Dpws& q : all) stable[q] = stable_revise(ev, q);
  std::vector<BeliefPair> out;
  for (const Dpws& x : all)
    for (const Dpws& y : all)
      if (stable.at(y) == x && stable.at(x) == y) {
        BeliefPair b{x, y};
        if (b.consistent()) out.push_back(std::move(b));
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

template <class T>
bool same_set(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

OracleReport brute_force_cross_check(const DistributedTheory& t,
                                     const Config& cfg) {
  OracleReport report;
  GroundTheory gt = ground_theory(t, cfg);
  SetEvaluator ev(gt);
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.mismatches.push_back(msg);
  };

  BeliefPair wf = well_founded(ev);
  BeliefPair kk = kripke_kleene(ev);

  if (brute_enumeration_feasible(gt, cfg)) {
    report.checks.push_back("supported vs brute force");
    if (!same_set(supported_models(ev, cfg), brute_supported(ev)))
      fail("supported models differ from the brute-force fixpoint filter");

    report.checks.push_back("stable vs brute force");
    if (!same_set(stable_models(ev, cfg), brute_stable(ev)))
      fail("stable models differ from the brute-force filter");

    report.checks.push_back("partial stable vs brute force");
    std::vector<BeliefPair> pst = brute_partial_stable(ev);
    if (!same_set(partial_stable_models(ev, cfg), pst))
      fail("partial stable models differ from the brute-force filter");

    report.checks.push_back("well-founded is the least precise partial stable");
    if (!is_partial_stable_model(ev, wf))
      fail("well-founded pair is not partial stable");
    for (const auto& b : pst)
      if (!leq_precision(wf, b))
        fail("well-founded pair not below a partial stable model");

    report.checks.push_back("Kripke-Kleene below every partial stable model");
    for (const auto& b : pst)
      if (!leq_precision(kk, b))
        fail("Kripke-Kleene pair not below a partial stable model");
  } else {
    report.checks.push_back(
        "product space over cap; exhaustive checks skipped");
  }

  RuleCheck rc = is_rule_theory(gt);
  if (rc.ok) {
    report.checks.push_back("fast well-founded path vs generic");
    LiteralBeliefPair fast = fast_well_founded(gt);
    if (!(fast.to_belief_pair(gt.atoms.size()) == wf))
      fail("dAELr fast path disagrees with the generic well-founded model");

    report.checks.push_back("query procedure vs well-founded valuation");
    auto oracles = local_support_oracles(gt, cfg);
    for (int a = 0; a < gt.agent_count(); ++a)
      for (int atom = 0; atom < gt.atoms.size(); ++atom)
        for (bool positive : {true, false}) {
          const Gf* lit = gt.pool->atom(atom);
          if (!positive) lit = gt.pool->negation(lit);
          DecideResult r = decide_with(oracles, gt, a, lit, cfg);
          Truth expect = eval3(ev, gt.pool->knows(a, lit), wf, 0);
          if (r.value != expect)
            fail("decide(<" + gt.agent_names[a] + ":" + to_string(gt, lit) +
                 ">) = " + truth_char(r.value) + " but the well-founded value is " +
                 truth_char(expect));
        }
  }
  return report;
}

}  // namespace daelix
