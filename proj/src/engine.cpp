#include "daelix/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "daelix/errors.hpp"

namespace daelix {

Dpws revise(const SetEvaluator& ev, const Dpws& q) {
  const GroundTheory& gt = ev.theory();
  int n = gt.atoms.size();
  Dpws out;
  out.per_agent.reserve(gt.agent_count());
  for (int a = 0; a < gt.agent_count(); ++a) {
    WorldSet w = WorldSet::all(n);
    for (const Gf* s : gt.sentences[a]) w &= ev.sat2(s, q);
    out.per_agent.push_back(std::move(w));
  }
  return out;
}

Dpws conservative_revision(const SetEvaluator& ev, const BeliefPair& b) {
  const GroundTheory& gt = ev.theory();
  int n = gt.atoms.size();
  Dpws out;
  out.per_agent.reserve(gt.agent_count());
  for (int a = 0; a < gt.agent_count(); ++a) {
    WorldSet w = WorldSet::all(n);
    for (const Gf* s : gt.sentences[a]) w &= ev.sat4(s, b).second;
    out.per_agent.push_back(std::move(w));
  }
  return out;
}

Dpws liberal_revision(const SetEvaluator& ev, const BeliefPair& b) {
  const GroundTheory& gt = ev.theory();
  int n = gt.atoms.size();
  Dpws out;
  out.per_agent.reserve(gt.agent_count());
  for (int a = 0; a < gt.agent_count(); ++a) {
    WorldSet w = WorldSet::all(n);
    for (const Gf* s : gt.sentences[a]) w &= ev.sat4(s, b).first;
    out.per_agent.push_back(std::move(w));
  }
  return out;
}

static BeliefPair approximate_raw(const SetEvaluator& ev, const BeliefPair& b) {
  return BeliefPair{conservative_revision(ev, b), liberal_revision(ev, b)};
}

BeliefPair approximate(const SetEvaluator& ev, const BeliefPair& b) {
  if (!b.consistent())
    throw ValidationError("approximate requires a consistent belief pair");
  return approximate_raw(ev, b);
}

Dpws stable_revise(const SetEvaluator& ev, const Dpws& q) {
  const GroundTheory& gt = ev.theory();
  Dpws x = Dpws::bottom(gt.agent_count(), gt.atoms.size());
  for (;;) {
    Dpws next = conservative_revision(ev, BeliefPair{x, q});
    if (next == x) return x;
    x = std::move(next);
  }
}

BeliefPair kripke_kleene(const SetEvaluator& ev) {
  const GroundTheory& gt = ev.theory();
  BeliefPair b = BeliefPair::least_precise(gt.agent_count(), gt.atoms.size());
  for (;;) {
    BeliefPair next = approximate_raw(ev, b);
    assert(next.consistent());
    if (next == b) return b;
    b = std::move(next);
  }
}

BeliefPair well_founded(const SetEvaluator& ev) {
  const GroundTheory& gt = ev.theory();
  BeliefPair b = BeliefPair::least_precise(gt.agent_count(), gt.atoms.size());
  for (;;) {
    BeliefPair next{stable_revise(ev, b.liberal), stable_revise(ev, b.conservative)};
    if (next == b) {
      assert(b.consistent());
      return b;
    }
    b = std::move(next);
  }
}

bool is_supported_model(const SetEvaluator& ev, const Dpws& q) {
  return revise(ev, q) == q;
}

bool is_stable_model(const SetEvaluator& ev, const Dpws& q) {
  return revise(ev, q) == q && stable_revise(ev, q) == q;
}

bool is_partial_stable_model(const SetEvaluator& ev, const BeliefPair& b) {
  if (!b.consistent()) return false;
  return stable_revise(ev, b.liberal) == b.conservative &&
         stable_revise(ev, b.conservative) == b.liberal;
}

static void collect_modal(const Gf* f, std::set<const Gf*>& seen,
                          std::vector<const Gf*>& out) {
  if (f->kind == GfKind::Knows && seen.insert(f).second) out.push_back(f);
  if (f->lhs) collect_modal(f->lhs, seen, out);
  if (f->rhs) collect_modal(f->rhs, seen, out);
}

std::vector<const Gf*> modal_subformulas(const GroundTheory& gt) {
  std::set<const Gf*> seen;
  std::vector<const Gf*> out;
  for (const auto& group : gt.sentences)
    for (const Gf* s : group) collect_modal(s, seen, out);
  std::sort(out.begin(), out.end(),
            [](const Gf* a, const Gf* b) { return a->id < b->id; });
  return out;
}

namespace {

// Evaluation with every modal subformula forced to a fixed boolean value.
WorldSet sat_forced(const SetEvaluator& ev, const Gf* f,
                    const std::unordered_map<const Gf*, bool>& forced) {
  int n = ev.theory().atoms.size();
  switch (f->kind) {
    case GfKind::True:
      return WorldSet::all(n);
    case GfKind::False:
      return WorldSet::none(n);
    case GfKind::Atom:
      return ev.atom_worlds(f->arg);
    case GfKind::Not:
      return sat_forced(ev, f->lhs, forced).complement();
    case GfKind::And:
      return sat_forced(ev, f->lhs, forced) & sat_forced(ev, f->rhs, forced);
    case GfKind::Knows:
      return forced.at(f) ? WorldSet::all(n) : WorldSet::none(n);
  }
  assert(false);
  return WorldSet::none(n);
}

}  // namespace

std::vector<Dpws> supported_models(const SetEvaluator& ev, const Config& cfg) {
  const GroundTheory& gt = ev.theory();
  int n = gt.atoms.size();
  std::vector<const Gf*> modal = modal_subformulas(gt);
  if (static_cast<int>(modal.size()) > cfg.modal_cap)
    throw CapExceeded(
        "supported-model enumeration over " + std::to_string(modal.size()) +
        " modal subformulas; for rule theories use the dAELr fast path, "
        "otherwise reduce the vocabulary");
  std::vector<Dpws> out;
  uint64_t total = uint64_t{1} << modal.size();
  for (uint64_t sigma = 0; sigma < total; ++sigma) {
    std::unordered_map<const Gf*, bool> forced;
    for (size_t i = 0; i < modal.size(); ++i)
      forced[modal[i]] = (sigma >> i) & 1;
    Dpws q;
    q.per_agent.reserve(gt.agent_count());
    for (int a = 0; a < gt.agent_count(); ++a) {
      WorldSet w = WorldSet::all(n);
      for (const Gf* s : gt.sentences[a]) w &= sat_forced(ev, s, forced);
      q.per_agent.push_back(std::move(w));
    }
    bool ok = true;
    for (const Gf* k : modal) {
      bool actual =
          q.per_agent[k->arg].subset_of(sat_forced(ev, k->lhs, forced));
      if (actual != forced[k]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Dpws> stable_models(const SetEvaluator& ev, const Config& cfg) {
  std::vector<Dpws> out;
  for (const Dpws& q : supported_models(ev, cfg))
    if (stable_revise(ev, q) == q) out.push_back(q);
  return out;
}

namespace {

// All world sets over n atoms, encoded as subset masks of the world list.
// Only used when the full product space fits under the enumeration cap.
std::vector<Dpws> all_dpws(int agents, int n_atoms) {
  std::size_t worlds = std::size_t{1} << n_atoms;
  std::size_t sets = std::size_t{1} << worlds;
  std::vector<WorldSet> all_sets;
  all_sets.reserve(sets);
  for (std::size_t mask = 0; mask < sets; ++mask) {
    WorldSet w = WorldSet::none(n_atoms);
    for (std::size_t i = 0; i < worlds; ++i)
      if ((mask >> i) & 1) w.set(static_cast<Interp>(i));
    all_sets.push_back(std::move(w));
  }
  std::vector<Dpws> out;
  std::vector<int> pick(agents, 0);
  for (;;) {
    Dpws q;
    for (int a = 0; a < agents; ++a) q.per_agent.push_back(all_sets[pick[a]]);
    out.push_back(std::move(q));
    int a = 0;
    while (a < agents) {
      if (++pick[a] < static_cast<int>(all_sets.size())) break;
      pick[a] = 0;
      ++a;
    }
    if (a == agents) break;
  }
  return out;
}

}  // namespace

std::vector<BeliefPair> partial_stable_models(const SetEvaluator& ev,
                                              const Config& cfg) {
  const GroundTheory& gt = ev.theory();
  int n = gt.atoms.size();
  int m = gt.agent_count();

  std::vector<Dpws> candidates;
  long double worlds = powl(2.0L, n);
  long double dpws_count = powl(powl(2.0L, worlds), m);
  if (dpws_count * dpws_count <= static_cast<long double>(cfg.enum_cap)) {
    candidates = all_dpws(m, n);
  } else {
    // Candidate closure: exact supported seeds plus the least precise pair,
    // closed under the partial-stable operator (S(y), S(x)).
    std::set<Dpws> seen;
    std::vector<BeliefPair> frontier;
    frontier.push_back(BeliefPair::least_precise(m, n));
    for (const Dpws& q : supported_models(ev, cfg))
      frontier.push_back(BeliefPair{q, q});
    auto note = [&](const Dpws& q) { seen.insert(q); };
    for (auto& b : frontier) {
      note(b.conservative);
      note(b.liberal);
    }
    while (!frontier.empty()) {
      BeliefPair b = frontier.back();
      frontier.pop_back();
      BeliefPair next{stable_revise(ev, b.liberal),
                      stable_revise(ev, b.conservative)};
      bool fresh = !seen.count(next.conservative) || !seen.count(next.liberal);
      note(next.conservative);
      note(next.liberal);
      if (fresh) frontier.push_back(next);
      if (seen.size() * seen.size() > cfg.enum_cap)
        throw CapExceeded("partial-stable candidate space too large");
    }
    candidates.assign(seen.begin(), seen.end());
  }

  // Memoize the stable revision per candidate.
  std::map<Dpws, Dpws> stable;
  for (const Dpws& q : candidates)
    if (!stable.count(q)) stable[q] = stable_revise(ev, q);

  std::vector<BeliefPair> out;
  for (const Dpws& y : candidates) {
    Dpws x = stable.at(y);
    // (x, y) is partial stable iff S(y) = x (by construction) and S(x) = y.
    auto it = stable.find(x);
    Dpws sx = it != stable.end() ? it->second : stable_revise(ev, x);
    if (sx == y) {
      BeliefPair b{x, y};
      if (b.consistent()) out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Dpws with_component(const Dpws& base, int agent, WorldSet w) {
  Dpws out = base;
  out.per_agent[agent] = std::move(w);
  return out;
}

bool legal_application_refinement(const BeliefPair& from, const BeliefPair& to,
                                  const BeliefPair& image) {
  return leq_precision(from, to) && leq_precision(to, image);
}

}  // namespace

BeliefPair wf_induction_replay(const SetEvaluator& ev, const Schedule& s) {
  if (s.empty()) throw ReplayError("empty schedule");
  const GroundTheory& gt = ev.theory();
  BeliefPair b = BeliefPair::least_precise(gt.agent_count(), gt.atoms.size());
  // Cyclic application until the pair is partial stable (terminal).
  for (int round = 0; round < 4096; ++round) {
    if (is_partial_stable_model(ev, b)) return b;
    bool progress = false;
    for (const ReplayStep& step : s) {
      BeliefPair next = b;
      switch (step.kind) {
        case ReplayStep::Kind::Approximate: {
          BeliefPair image = approximate_raw(ev, b);
          next = image;
          if (!legal_application_refinement(b, next, image))
            throw ReplayError("approximator step is not a refinement");
          break;
        }
        case ReplayStep::Kind::TightenConservative: {
          BeliefPair image = approximate_raw(ev, b);
          if (step.agent)
            next.conservative = with_component(
                b.conservative, *step.agent,
                image.conservative.per_agent[*step.agent]);
          else
            next.conservative = image.conservative;
          if (!legal_application_refinement(b, next, image))
            throw ReplayError("conservative tightening is not a refinement");
          break;
        }
        case ReplayStep::Kind::TightenLiberal: {
          BeliefPair image = approximate_raw(ev, b);
          if (step.agent)
            next.liberal = with_component(b.liberal, *step.agent,
                                          image.liberal.per_agent[*step.agent]);
          else
            next.liberal = image.liberal;
          if (!legal_application_refinement(b, next, image))
            throw ReplayError("liberal tightening is not a refinement");
          break;
        }
        case ReplayStep::Kind::StableTighten: {
          Dpws tightened = stable_revise(ev, b.conservative);
          if (!leq_knowledge(tightened, b.liberal))
            throw ReplayError("stable tightening would overshoot the bound");
          next.liberal = tightened;
          // second refinement clause: x' = x and D^l(x, y') <=_K y' <=_K y
          Dpws check = liberal_revision(ev, next);
          if (!leq_knowledge(check, next.liberal))
            throw ReplayError("stable tightening is not a refinement");
          break;
        }
      }
      if (!(next == b)) progress = true;
      b = std::move(next);
      if (is_partial_stable_model(ev, b)) return b;
    }
    if (!progress)
      throw ReplayError(
          "schedule stalls before reaching the well-founded fixpoint");
  }
  throw ReplayError("schedule did not converge");
}

}  // namespace daelix
