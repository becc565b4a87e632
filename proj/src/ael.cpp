#include "daelix/ael.hpp"

#include <cassert>
#include <sstream>

#include "daelix/errors.hpp"

namespace daelix {

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.head);
  for (const auto& a : t.args) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.args) collect_names(t, out);
  if (f.index) collect_names(*f.index, out);
  if (!f.var.empty()) out.insert(f.var);
  if (f.lhs) collect_names(*f.lhs, out);
  if (f.rhs) collect_names(*f.rhs, out);
}

struct Translator {
  const DistributedTheory& t;
  std::set<std::string> used;
  int counter = 0;

  std::string fresh_var() {
    for (;;) {
      std::string name = "x" + std::to_string(counter++);
      if (!used.count(name)) {
        used.insert(name);
        return name;
      }
    }
  }

  // t_s: subjective function applications would gain the agent slot; the
  // vocabulary admits none, so only the recursion structure remains.
  Term term_s(const Term& term, const Term& s) {
    if (term.is_variable) return term;
    std::vector<Term> args;
    args.reserve(term.args.size());
    for (const auto& a : term.args) args.push_back(term_s(a, s));
    return Term::app(term.head, std::move(args));
  }

  FormulaPtr walk(const Term& s, const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Atom: {
        const PredSig* p = t.vocab.find_pred(f.pred);
        assert(p);
        std::vector<Term> args;
        args.reserve(f.args.size() + 1);
        for (const auto& a : f.args) args.push_back(term_s(a, s));
        if (!p->objective) args.push_back(s);
        return Formula::atom(f.pred, std::move(args));
      }
      case FormulaKind::Not:
        return Formula::negation(walk(s, *f.lhs));
      case FormulaKind::And:
        return Formula::conj(walk(s, *f.lhs), walk(s, *f.rhs));
      case FormulaKind::Or:
        return Formula::disj(walk(s, *f.lhs), walk(s, *f.rhs));
      case FormulaKind::Implies:
        return Formula::implies(walk(s, *f.lhs), walk(s, *f.rhs));
      case FormulaKind::Iff:
        return Formula::iff(walk(s, *f.lhs), walk(s, *f.rhs));
      case FormulaKind::Forall:
        return Formula::forall(f.var, walk(s, *f.lhs));
      case FormulaKind::Exists:
        return Formula::exists(f.var, walk(s, *f.lhs));
      case FormulaKind::Knows: {
        if (!f.index)
          throw ValidationError("cannot translate an unindexed K");
        std::string x = fresh_var();
        Term xv = Term::var(x);
        FormulaPtr inner = walk(xv, *f.lhs);
        FormulaPtr body = Formula::conj(
            Formula::conj(Formula::equals(xv, term_s(*f.index, s)),
                          Formula::atom(builtin::kAgentPred, {xv})),
            Formula::knows_unindexed(inner));
        return Formula::exists(x, body);
      }
    }
    assert(false);
    return nullptr;
  }
};

}  // namespace

FormulaPtr translate_formula(const DistributedTheory& t, const Term& s,
                             const FormulaPtr& f) {
  Translator tr{t, {}, 0};
  collect_names(*f, tr.used);
  collect_names(s, tr.used);
  return tr.walk(s, *f);
}

AelTheory translate_theory(const DistributedTheory& t) {
  AelTheory ael;
  for (const auto& p : t.vocab.preds()) {
    if (p.objective)
      ael.vocab.declare_pred(p.name, p.arity, true);
    else
      ael.vocab.declare_pred(p.name, p.arity + 1, false);
  }
  for (const auto& fn : t.vocab.funcs()) ael.vocab.declare_func(fn.name, fn.arity);
  ael.objective = t.objective;
  ael.default_element = 0;  // delta: first domain element, declaration order
  for (size_t a = 0; a < t.agents.size(); ++a) {
    Term agent = Term::app(t.agents[a]);
    for (const auto& s : t.sentences[a])
      ael.sentences.push_back(translate_formula(t, agent, s));
  }
  return ael;
}

GroundTheory ground_ael(const AelTheory& ael, const Config& cfg) {
  std::vector<FormulaPtr> desugared;
  desugared.reserve(ael.sentences.size());
  for (const auto& s : ael.sentences) desugared.push_back(desugar(s));
  return ground_single_knower(ael.vocab, ael.objective, desugared, cfg);
}

Interp translate_structure(const GroundTheory& gt_d, const GroundTheory& gt_a,
                           const DistributedTheory& t,
                           const std::vector<Interp>& per_agent) {
  Interp j = 0;
  for (int k = 0; k < gt_a.atoms.size(); ++k) {
    const GroundAtom& atom = gt_a.atoms.atom(k);
    assert(!atom.args.empty());
    int slot = atom.args.back();
    int agent = t.agent_index(gt_a.objective->name_of(slot));
    if (agent < 0) continue;  // non-agent slot: false
    GroundAtom base{atom.pred,
                    std::vector<int>(atom.args.begin(), atom.args.end() - 1)};
    int di = gt_d.atoms.index_of(base);
    if (di < 0) continue;  // never mentioned on the dAEL side: false
    if ((per_agent[agent] >> di) & 1) j |= Interp{1} << k;
  }
  return j;
}

WorldSet translate_pws(const GroundTheory& gt_d, const GroundTheory& gt_a,
                       const DistributedTheory& t, const Dpws& q) {
  WorldSet out = WorldSet::none(gt_a.atoms.size());
  int m = q.agent_count();
  std::vector<std::vector<Interp>> worlds;
  worlds.reserve(m);
  for (int a = 0; a < m; ++a) {
    worlds.push_back(q.per_agent[a].worlds());
    if (worlds.back().empty()) return out;  // not universally consistent
  }
  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    std::vector<Interp> choice(m);
    for (int a = 0; a < m; ++a) choice[a] = worlds[a][pick[a]];
    out.set(translate_structure(gt_d, gt_a, t, choice));
    int a = 0;
    while (a < m) {
      if (++pick[a] < worlds[a].size()) break;
      pick[a] = 0;
      ++a;
    }
    if (a == m) break;
  }
  return out;
}

BeliefPair translate_belief_pair(const GroundTheory& gt_d,
                                 const GroundTheory& gt_a,
                                 const DistributedTheory& t,
                                 const BeliefPair& b) {
  Dpws cons, lib;
  cons.per_agent.push_back(translate_pws(gt_d, gt_a, t, b.conservative));
  lib.per_agent.push_back(translate_pws(gt_d, gt_a, t, b.liberal));
  return BeliefPair{std::move(cons), std::move(lib)};
}

namespace {

// Rebuilds a sentence substituting the i-th non-nested modal occurrence (in
// depth-first order) by the i-th bit of the substitution mask.
const Gf* substitute_modal(GfPool& pool, const Gf* f, uint64_t mask,
                           int& counter) {
  switch (f->kind) {
    case GfKind::True:
    case GfKind::False:
    case GfKind::Atom:
      return f;
    case GfKind::Not:
      return pool.negation(substitute_modal(pool, f->lhs, mask, counter));
    case GfKind::And: {
      const Gf* a = substitute_modal(pool, f->lhs, mask, counter);
      const Gf* b = substitute_modal(pool, f->rhs, mask, counter);
      return pool.conj(a, b);
    }
    case GfKind::Knows:
      return pool.truth((mask >> counter++) & 1);
  }
  assert(false);
  return f;
}

int count_modal_occurrences(const Gf* f) {
  switch (f->kind) {
    case GfKind::True:
    case GfKind::False:
    case GfKind::Atom:
      return 0;
    case GfKind::Not:
      return count_modal_occurrences(f->lhs);
    case GfKind::And:
      return count_modal_occurrences(f->lhs) + count_modal_occurrences(f->rhs);
    case GfKind::Knows:
      return 1;
  }
  return 0;
}

}  // namespace

bool is_permaconsistent(const GroundTheory& gt, const Config& cfg) {
  SetEvaluator ev(gt);
  Dpws dummy = Dpws::bottom(gt.agent_count(), gt.atoms.size());
  for (int a = 0; a < gt.agent_count(); ++a) {
    int occurrences = 0;
    for (const Gf* s : gt.sentences[a]) occurrences += count_modal_occurrences(s);
    if (occurrences > cfg.perma_cap)
      throw CapExceeded("permaconsistency over " + std::to_string(occurrences) +
                        " modal occurrences");
    for (uint64_t mask = 0; mask < (uint64_t{1} << occurrences); ++mask) {
      WorldSet models = WorldSet::all(gt.atoms.size());
      int counter = 0;
      for (const Gf* s : gt.sentences[a]) {
        const Gf* residual = substitute_modal(*gt.pool, s, mask, counter);
        models &= ev.sat2(residual, dummy);
      }
      if (models.empty()) return false;
    }
  }
  return true;
}

std::string ael_to_text(const AelTheory& ael) {
  std::ostringstream os;
  os << "# AEL translation (single knower; K is unindexed)\n";
  os << "domain {";
  for (int e = 0; e < ael.objective.size(); ++e)
    os << (e ? ", " : " ") << ael.objective.name_of(e);
  os << " }.\n";
  for (const auto& p : ael.vocab.preds()) {
    if (p.name == builtin::kTrue || p.name == builtin::kFalse ||
        p.name == builtin::kEquals || p.name == builtin::kAgentPred)
      continue;
    os << "pred " << p.name << "/" << p.arity
       << (p.objective ? " objective" : "") << ".\n";
  }
  for (const auto& fn : ael.vocab.funcs())
    os << "func " << fn.name << "/" << fn.arity << " objective.\n";
  os << "ael {\n";
  for (const auto& s : ael.sentences) os << "  " << to_string(s) << ".\n";
  os << "}\n";
  return os.str();
}

}  // namespace daelix
