#include "daelix/lp.hpp"

#include <algorithm>
#include <cassert>

#include "daelix/engine.hpp"
#include "daelix/errors.hpp"

namespace daelix {

namespace {

const Gf* strip(const Gf* f) {
  while (f->kind == GfKind::Not && f->lhs->kind == GfKind::Not)
    f = f->lhs->lhs;
  return f;
}

struct Literal {
  int atom;
  bool positive;
};

std::optional<Literal> as_literal(const Gf* f) {
  f = strip(f);
  if (f->kind == GfKind::Atom) return Literal{f->arg, true};
  if (f->kind == GfKind::Not) {
    const Gf* inner = strip(f->lhs);
    if (inner->kind == GfKind::Atom) return Literal{inner->arg, false};
  }
  return std::nullopt;
}

// The literal denoted by the negation of f, if any.
std::optional<Literal> negated_literal(const Gf* f) {
  f = strip(f);
  if (f->kind == GfKind::Atom) return Literal{f->arg, false};
  if (f->kind == GfKind::Not) return as_literal(f->lhs);
  return std::nullopt;
}

// Translates a guard into a body over split atoms.  Returns nullptr and
// fills `error` when the guard is not a modal complex.
struct GuardTranslator {
  GfPool& pool;
  const LogicProgram& prog;
  std::string error;

  const Gf* top(const Gf* f) {
    f = strip(f);
    switch (f->kind) {
      case GfKind::True:
        return pool.truth(true);
      case GfKind::False:
        return pool.truth(false);
      case GfKind::And: {
        const Gf* a = top(f->lhs);
        if (!a) return nullptr;
        const Gf* b = top(f->rhs);
        if (!b) return nullptr;
        return pool.conj(a, b);
      }
      case GfKind::Not: {
        const Gf* a = top(f->lhs);
        if (!a) return nullptr;
        return pool.negation(a);
      }
      case GfKind::Atom:
        error = "atom occurs outside a modal literal";
        return nullptr;
      case GfKind::Knows:
        return inside(f->arg, f->lhs);
    }
    return nullptr;
  }

  // Under K_agent: conjunctions distribute, nested modal operators take
  // over (the innermost operator scopes the literal), negations may only
  // face a literal or a modal subformula.
  const Gf* inside(int agent, const Gf* f) {
    f = strip(f);
    switch (f->kind) {
      case GfKind::True:
        return pool.truth(true);
      case GfKind::False:
        error = "modal operator applied to false";
        return nullptr;
      case GfKind::Atom:
        return pool.atom(prog.split(f->arg, agent, true));
      case GfKind::And: {
        const Gf* a = inside(agent, f->lhs);
        if (!a) return nullptr;
        const Gf* b = inside(agent, f->rhs);
        if (!b) return nullptr;
        return pool.conj(a, b);
      }
      case GfKind::Not: {
        const Gf* x = strip(f->lhs);
        if (x->kind == GfKind::Atom)
          return pool.atom(prog.split(x->arg, agent, false));
        if (x->kind == GfKind::Knows) {
          const Gf* a = inside(x->arg, x->lhs);
          if (!a) return nullptr;
          return pool.negation(a);
        }
        if (x->kind == GfKind::True) return pool.truth(false);
        if (x->kind == GfKind::False) return pool.truth(true);
        error = "negated conjunction under a modal operator";
        return nullptr;
      }
      case GfKind::Knows:
        return inside(f->arg, f->lhs);
    }
    return nullptr;
  }
};

struct RuleView {
  bool trivial = false;  // sentence is objectively true, contributes nothing
  const Gf* body = nullptr;
  Literal head{};
};

std::optional<RuleView> view_rule(const Gf* s, GfPool& pool,
                                  const LogicProgram& prog,
                                  std::string* error) {
  s = strip(s);
  if (s->kind == GfKind::True) {
    RuleView v;
    v.trivial = true;
    return v;
  }
  if (auto lit = as_literal(s)) {
    RuleView v;
    v.body = pool.truth(true);
    v.head = *lit;
    return v;
  }
  if (s->kind == GfKind::Not) {
    const Gf* inner = strip(s->lhs);
    if (inner->kind == GfKind::And) {
      // ~(g & x)  reads as  g => ~x  (or symmetrically x => ~g)
      const Gf* cands[2][2] = {{inner->lhs, inner->rhs},
                               {inner->rhs, inner->lhs}};
      for (auto& cand : cands) {
        auto head = negated_literal(cand[1]);
        if (!head) continue;
        GuardTranslator tr{pool, prog, {}};
        const Gf* body = tr.top(cand[0]);
        if (body) {
          RuleView v;
          v.body = body;
          v.head = *head;
          return v;
        }
        if (error) *error = tr.error;
      }
    }
  }
  if (error && error->empty())
    *error = "sentence is neither a literal nor a guarded literal";
  return std::nullopt;
}

}  // namespace

RuleCheck is_rule_theory(const GroundTheory& gt) {
  LogicProgram scratch;
  scratch.n_atoms = gt.atoms.size();
  scratch.n_agents = gt.agent_count();
  GfPool pool;
  for (int a = 0; a < gt.agent_count(); ++a)
    for (const Gf* s : gt.sentences[a]) {
      std::string err;
      if (!view_rule(s, pool, scratch, &err)) {
        RuleCheck rc;
        rc.ok = false;
        rc.offender = to_string(gt, s);
        rc.agent = a;
        return rc;
      }
    }
  return RuleCheck{};
}

LogicProgram theory_to_lp(const GroundTheory& gt) {
  LogicProgram p;
  p.n_atoms = gt.atoms.size();
  p.n_agents = gt.agent_count();
  p.n_base = 2 * p.n_atoms * p.n_agents;
  p.n_total = p.n_base;
  p.pool = std::make_shared<GfPool>();
  p.names.resize(p.n_base);
  for (int atom = 0; atom < p.n_atoms; ++atom)
    for (int agent = 0; agent < p.n_agents; ++agent) {
      p.names[p.split(atom, agent, true)] =
          gt.atom_name(atom) + "^+_" + gt.agent_names[agent];
      p.names[p.split(atom, agent, false)] =
          gt.atom_name(atom) + "^-_" + gt.agent_names[agent];
    }
  for (int a = 0; a < gt.agent_count(); ++a)
    for (const Gf* s : gt.sentences[a]) {
      std::string err;
      auto v = view_rule(s, *p.pool, p, &err);
      if (!v)
        throw ValidationError("not a rule formula (" + err +
                              "): " + to_string(gt, s));
      if (v->trivial) continue;
      p.rules.push_back(
          {p.split(v->head.atom, a, v->head.positive), v->body});
    }
  return p;
}

void add_consistency_closure(LogicProgram& p) {
  int incons_base = p.n_total;
  p.n_total += p.n_agents;
  for (int agent = 0; agent < p.n_agents; ++agent) {
    p.names.push_back("incons_" + std::to_string(agent));
    int incons = incons_base + agent;
    for (int atom = 0; atom < p.n_atoms; ++atom) {
      const Gf* both = p.pool->conj(p.pool->atom(p.split(atom, agent, true)),
                                    p.pool->atom(p.split(atom, agent, false)));
      p.rules.push_back({incons, both});
    }
    for (int atom = 0; atom < p.n_atoms; ++atom) {
      p.rules.push_back({p.split(atom, agent, true), p.pool->atom(incons)});
      p.rules.push_back({p.split(atom, agent, false), p.pool->atom(incons)});
    }
  }
}

namespace {

// (certainly true, possibly true) of a body under lower/upper bit vectors.
std::pair<bool, bool> body_value(const Gf* f, const std::vector<char>& lo,
                                 const std::vector<char>& hi) {
  switch (f->kind) {
    case GfKind::True:
      return {true, true};
    case GfKind::False:
      return {false, false};
    case GfKind::Atom:
      return {lo[f->arg] != 0, hi[f->arg] != 0};
    case GfKind::Not: {
      auto v = body_value(f->lhs, lo, hi);
      return {!v.second, !v.first};
    }
    case GfKind::And: {
      auto a = body_value(f->lhs, lo, hi);
      auto b = body_value(f->rhs, lo, hi);
      return {a.first && b.first, a.second && b.second};
    }
    case GfKind::Knows:
      break;
  }
  assert(false && "logic program bodies contain no modal operators");
  return {false, false};
}

// Least fixpoint of the lower closure with the upper bound fixed.
std::vector<char> lp_stable(const LogicProgram& p,
                            const std::vector<char>& upper) {
  std::vector<char> lo(p.n_total, 0);
  for (;;) {
    std::vector<char> next(p.n_total, 0);
    for (const auto& r : p.rules)
      if (!next[r.head] && body_value(r.body, lo, upper).first)
        next[r.head] = 1;
    if (next == lo) return lo;
    lo = std::move(next);
  }
}

}  // namespace

LpInterp3 lp_fitting(const LogicProgram& p, const LpInterp3& i) {
  assert(static_cast<int>(i.values.size()) == p.n_total);
  std::vector<char> lo(p.n_total, 0), hi(p.n_total, 0);
  for (int x = 0; x < p.n_total; ++x) {
    lo[x] = i.values[x] == Truth::True;
    hi[x] = i.values[x] != Truth::False;
  }
  std::vector<char> out_lo(p.n_total, 0), out_hi(p.n_total, 0);
  for (const auto& r : p.rules) {
    auto v = body_value(r.body, lo, hi);
    out_lo[r.head] |= v.first;
    out_hi[r.head] |= v.second;
  }
  LpInterp3 out;
  out.values.resize(p.n_total);
  for (int x = 0; x < p.n_total; ++x)
    out.values[x] = out_lo[x]   ? Truth::True
                    : out_hi[x] ? Truth::Unknown
                                : Truth::False;
  return out;
}

LpInterp3 lp_well_founded(const LogicProgram& p) {
  std::vector<char> lo(p.n_total, 0), hi(p.n_total, 1);
  for (;;) {
    std::vector<char> lo2 = lp_stable(p, hi);
    std::vector<char> hi2 = lp_stable(p, lo);
    if (lo2 == lo && hi2 == hi) break;
    lo = std::move(lo2);
    hi = std::move(hi2);
  }
  LpInterp3 out;
  out.values.resize(p.n_total);
  for (int x = 0; x < p.n_total; ++x)
    out.values[x] = lo[x] ? Truth::True : hi[x] ? Truth::Unknown : Truth::False;
  return out;
}

bool LiteralDpws::agent_inconsistent(int agent) const {
  for (size_t atom = 0; atom < pos[agent].size(); ++atom)
    if (pos[agent][atom] && neg[agent][atom]) return true;
  return false;
}

bool LiteralDpws::knows_literal(int agent, int atom, bool positive) const {
  if (positive ? pos[agent][atom] : neg[agent][atom]) return true;
  return agent_inconsistent(agent);
}

WorldSet LiteralDpws::to_world_set(int agent, int n_atoms) const {
  WorldSet w = WorldSet::all(n_atoms);
  for (int atom = 0; atom < n_atoms; ++atom) {
    if (pos[agent][atom]) w &= WorldSet::atom_pattern(n_atoms, atom);
    if (neg[agent][atom]) w &= WorldSet::atom_pattern(n_atoms, atom).complement();
  }
  return w;
}

Dpws LiteralDpws::to_dpws(int n_atoms) const {
  Dpws q;
  q.per_agent.reserve(agent_count());
  for (int a = 0; a < agent_count(); ++a)
    q.per_agent.push_back(to_world_set(a, n_atoms));
  return q;
}

BeliefPair LiteralBeliefPair::to_belief_pair(int n_atoms) const {
  return BeliefPair{lower.to_dpws(n_atoms), upper.to_dpws(n_atoms)};
}

Truth LiteralBeliefPair::eval_knows(int agent, int atom, bool positive) const {
  if (lower.knows_literal(agent, atom, positive)) return Truth::True;
  if (!upper.knows_literal(agent, atom, positive)) return Truth::False;
  return Truth::Unknown;
}

LiteralDpws mu_two_valued(const LogicProgram& p, const std::vector<bool>& i) {
  LiteralDpws out;
  out.pos.assign(p.n_agents, std::vector<bool>(p.n_atoms, false));
  out.neg.assign(p.n_agents, std::vector<bool>(p.n_atoms, false));
  for (int atom = 0; atom < p.n_atoms; ++atom)
    for (int agent = 0; agent < p.n_agents; ++agent) {
      out.pos[agent][atom] = i[p.split(atom, agent, true)];
      out.neg[agent][atom] = i[p.split(atom, agent, false)];
    }
  return out;
}

LiteralBeliefPair mu(const LogicProgram& p, const LpInterp3& i) {
  std::vector<bool> lo(p.n_base), hi(p.n_base);
  for (int x = 0; x < p.n_base; ++x) {
    lo[x] = i.values[x] == Truth::True;
    hi[x] = i.values[x] != Truth::False;
  }
  return LiteralBeliefPair{mu_two_valued(p, lo), mu_two_valued(p, hi)};
}

LpInterp3 saturate(const LogicProgram& p, const LpInterp3& i) {
  std::vector<char> lo(p.n_base), hi(p.n_base);
  for (int x = 0; x < p.n_base; ++x) {
    lo[x] = i.values[x] == Truth::True;
    hi[x] = i.values[x] != Truth::False;
  }
  auto saturate_side = [&](std::vector<char>& side) {
    for (int agent = 0; agent < p.n_agents; ++agent) {
      bool incons = false;
      for (int atom = 0; atom < p.n_atoms && !incons; ++atom)
        incons = side[p.split(atom, agent, true)] &&
                 side[p.split(atom, agent, false)];
      if (incons)
        for (int atom = 0; atom < p.n_atoms; ++atom) {
          side[p.split(atom, agent, true)] = 1;
          side[p.split(atom, agent, false)] = 1;
        }
    }
  };
  saturate_side(lo);
  saturate_side(hi);
  LpInterp3 out;
  out.values.resize(i.values.size());
  for (size_t x = 0; x < i.values.size(); ++x) {
    if (x < static_cast<size_t>(p.n_base))
      out.values[x] = lo[x] ? Truth::True : hi[x] ? Truth::Unknown : Truth::False;
    else
      out.values[x] = i.values[x];
  }
  return out;
}

LiteralBeliefPair fast_well_founded(const GroundTheory& gt) {
  RuleCheck rc = is_rule_theory(gt);
  if (!rc.ok)
    throw ValidationError("not a dAELr rule theory; offending sentence of " +
                          gt.agent_names[rc.agent] + ": " + rc.offender);
  LogicProgram p = theory_to_lp(gt);
  add_consistency_closure(p);
  LpInterp3 wf = lp_well_founded(p);
  return mu(p, wf);
}

namespace {

// Two-valued truth of a split atom at per-agent literal sets, including the
// vacuous truth at inconsistent agents.
struct LiteralValuation {
  const LogicProgram& p;
  const std::vector<char>& truth;  // over base split atoms
  std::vector<char> incons;        // per agent

  bool value(int split) const {
    if (truth[split]) return true;
    int agent = (split / 2) % p.n_agents;
    return incons[agent] != 0;
  }
};

bool body_true(const Gf* f, const LiteralValuation& v) {
  switch (f->kind) {
    case GfKind::True:
      return true;
    case GfKind::False:
      return false;
    case GfKind::Atom:
      return v.value(f->arg);
    case GfKind::Not:
      return !body_true(f->lhs, v);
    case GfKind::And:
      return body_true(f->lhs, v) && body_true(f->rhs, v);
    case GfKind::Knows:
      break;
  }
  assert(false);
  return false;
}

}  // namespace

std::vector<Dpws> rule_supported_models(const SetEvaluator& ev,
                                        const Config& cfg) {
  const GroundTheory& gt = ev.theory();
  RuleCheck rc = is_rule_theory(gt);
  if (!rc.ok)
    throw ValidationError("not a dAELr rule theory; offending sentence of " +
                          gt.agent_names[rc.agent] + ": " + rc.offender);
  LogicProgram p = theory_to_lp(gt);

  // Every revision image is the model set of fired heads, so fixpoints are
  // determined by a subset of the program's head literals.
  std::vector<int> heads;
  for (const auto& r : p.rules) heads.push_back(r.head);
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  if (heads.size() >= 64 ||
      (uint64_t{1} << heads.size()) > static_cast<uint64_t>(cfg.enum_cap))
    throw CapExceeded("supported-model enumeration over " +
                      std::to_string(heads.size()) + " head literals");

  std::vector<Dpws> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << heads.size()); ++mask) {
    std::vector<char> truth(p.n_base, 0);
    for (size_t i = 0; i < heads.size(); ++i)
      if ((mask >> i) & 1) truth[heads[i]] = 1;
    LiteralValuation v{p, truth, std::vector<char>(p.n_agents, 0)};
    for (int agent = 0; agent < p.n_agents; ++agent)
      for (int atom = 0; atom < p.n_atoms; ++atom)
        if (truth[p.split(atom, agent, true)] &&
            truth[p.split(atom, agent, false)]) {
          v.incons[agent] = 1;
          break;
        }
    // fired heads under this valuation
    std::vector<char> fired(p.n_base, 0);
    for (const auto& r : p.rules)
      if (!fired[r.head] && body_true(r.body, v)) fired[r.head] = 1;
    // fixpoint per agent, modulo the collapse of inconsistent literal sets
    bool ok = true;
    for (int agent = 0; agent < p.n_agents && ok; ++agent) {
      bool fired_incons = false;
      for (int atom = 0; atom < p.n_atoms && !fired_incons; ++atom)
        fired_incons = fired[p.split(atom, agent, true)] &&
                       fired[p.split(atom, agent, false)];
      if (v.incons[agent] || fired_incons) {
        ok = v.incons[agent] && fired_incons;
        continue;
      }
      for (int atom = 0; atom < p.n_atoms && ok; ++atom)
        ok = fired[p.split(atom, agent, true)] ==
                 truth[p.split(atom, agent, true)] &&
             fired[p.split(atom, agent, false)] ==
                 truth[p.split(atom, agent, false)];
    }
    if (!ok) continue;
    std::vector<bool> bits(truth.begin(), truth.end());
    out.push_back(mu_two_valued(p, bits).to_dpws(p.n_atoms));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Dpws> rule_stable_models(const SetEvaluator& ev,
                                     const Config& cfg) {
  std::vector<Dpws> out;
  for (const Dpws& q : rule_supported_models(ev, cfg))
    if (stable_revise(ev, q) == q) out.push_back(q);
  return out;
}

}  // namespace daelix
