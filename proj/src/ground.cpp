#include "daelix/ground.hpp"

#include <algorithm>
#include <cassert>

#include "daelix/errors.hpp"

namespace daelix {

int GroundAtomTable::index_of(const GroundAtom& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

std::string GroundAtomTable::name(int i, const ObjectiveStructure& o) const {
  const GroundAtom& a = atoms_.at(i);
  if (a.args.empty()) return a.pred;
  std::string s = a.pred + "(";
  for (size_t k = 0; k < a.args.size(); ++k) {
    if (k) s += ",";
    s += o.name_of(a.args[k]);
  }
  return s + ")";
}

GroundAtomTable GroundAtomTable::build(std::vector<GroundAtom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  GroundAtomTable t;
  t.atoms_ = std::move(atoms);
  for (size_t i = 0; i < t.atoms_.size(); ++i)
    t.index_[t.atoms_[i]] = static_cast<int>(i);
  return t;
}

const Gf* GfPool::intern(Gf n) {
  auto key = std::make_tuple(static_cast<uint8_t>(n.kind), n.arg, n.lhs, n.rhs);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  n.id = next_id_++;
  nodes_.push_back(n);
  const Gf* p = &nodes_.back();
  memo_[key] = p;
  return p;
}

const Gf* GfPool::truth(bool v) {
  return intern(Gf{v ? GfKind::True : GfKind::False, -1, nullptr, nullptr, 0});
}

const Gf* GfPool::atom(int index) {
  return intern(Gf{GfKind::Atom, index, nullptr, nullptr, 0});
}

const Gf* GfPool::negation(const Gf* a) {
  if (a->kind == GfKind::True) return truth(false);
  if (a->kind == GfKind::False) return truth(true);
  return intern(Gf{GfKind::Not, -1, a, nullptr, 0});
}

const Gf* GfPool::conj(const Gf* a, const Gf* b) {
  if (a->kind == GfKind::False || b->kind == GfKind::False) return truth(false);
  if (a->kind == GfKind::True) return b;
  if (b->kind == GfKind::True) return a;
  return intern(Gf{GfKind::And, -1, a, b, 0});
}

const Gf* GfPool::knows(int agent, const Gf* a) {
  // K_A true holds for every world set, vacuously or not; K_A false is kept,
  // it is true exactly when the agent's world set is empty.
  if (a->kind == GfKind::True) return truth(true);
  return intern(Gf{GfKind::Knows, agent, a, nullptr, 0});
}

std::string GroundTheory::atom_name(int i) const {
  return atoms.name(i, *objective);
}

namespace {

// Grounds formulas in two passes over a provisional pool: first build folded
// nodes with provisional atom numbering, then renumber atoms canonically and
// rebuild into the final pool.
class Grounder {
 public:
  Grounder(const Vocabulary& vocab, const ObjectiveStructure& objective,
           const std::vector<std::string>& agents, const Config& cfg)
      : vocab_(vocab), objective_(objective), agents_(agents), cfg_(cfg) {
    for (size_t i = 0; i < agents.size(); ++i)
      agent_index_[agents[i]] = static_cast<int>(i);
  }

  const Gf* ground(const FormulaPtr& sentence) {
    steps_ = 0;
    std::map<std::string, int> assignment;
    return walk(*sentence, assignment);
  }

  // Finalizes the atom table and remaps every grounded sentence.
  GroundTheory finish(std::vector<std::vector<const Gf*>> per_agent,
                      std::vector<const Gf*>* extra) {
    std::vector<char> used(provisional_.size(), 0);
    for (const auto& group : per_agent)
      for (const Gf* s : group) mark_atoms(s, used);
    if (extra)
      for (const Gf* s : *extra) mark_atoms(s, used);

    std::vector<GroundAtom> live;
    for (size_t i = 0; i < provisional_.size(); ++i)
      if (used[i]) live.push_back(provisional_[i]);

    GroundTheory gt;
    gt.atoms = GroundAtomTable::build(std::move(live));
    if (gt.atoms.size() > cfg_.atom_cap)
      throw CapExceeded("ground atom count " + std::to_string(gt.atoms.size()) +
                        " exceeds the world cap " +
                        std::to_string(cfg_.atom_cap));
    gt.pool = std::make_shared<GfPool>();
    gt.agent_names = agents_;
    gt.objective = std::make_shared<const ObjectiveStructure>(objective_);
    std::map<const Gf*, const Gf*> memo;
    for (auto& group : per_agent) {
      std::vector<const Gf*> out;
      out.reserve(group.size());
      for (const Gf* s : group) out.push_back(remap(s, gt, memo));
      gt.sentences.push_back(std::move(out));
    }
    if (extra)
      for (auto& s : *extra) s = remap(s, gt, memo);
    return gt;
  }

 private:
  const Gf* walk(const Formula& f, std::map<std::string, int>& asg) {
    if (++steps_ > cfg_.ground_cap)
      throw CapExceeded("grounding exceeds " + std::to_string(cfg_.ground_cap) +
                        " nodes; simplify the theory or raise the cap");
    switch (f.kind) {
      case FormulaKind::Atom:
        return ground_atom(f, asg);
      case FormulaKind::Not:
        return pool_.negation(walk(*f.lhs, asg));
      case FormulaKind::And: {
        const Gf* a = walk(*f.lhs, asg);
        const Gf* b = walk(*f.rhs, asg);
        return pool_.conj(a, b);
      }
      case FormulaKind::Forall: {
        const Gf* acc = pool_.truth(true);
        bool shadowed = asg.count(f.var) != 0;
        int saved = shadowed ? asg[f.var] : -1;
        for (int d = 0; d < objective_.size(); ++d) {
          asg[f.var] = d;
          acc = pool_.conj(acc, walk(*f.lhs, asg));
        }
        if (shadowed)
          asg[f.var] = saved;
        else
          asg.erase(f.var);
        return acc;
      }
      case FormulaKind::Knows: {
        if (!f.index) {
          if (agents_.size() != 1)
            throw ValidationError(
                "unindexed K is only meaningful for a single knower");
          return pool_.knows(0, walk(*f.lhs, asg));
        }
        int elem = objective_.eval_term(*f.index, asg);
        auto it = agent_index_.find(objective_.name_of(elem));
        if (it == agent_index_.end()) return pool_.truth(false);
        return pool_.knows(it->second, walk(*f.lhs, asg));
      }
      default:
        throw ValidationError("grounding requires a desugared sentence: " +
                              to_string(f));
    }
  }

  const Gf* ground_atom(const Formula& f, std::map<std::string, int>& asg) {
    const PredSig* p = vocab_.find_pred(f.pred);
    if (!p) throw ValidationError("undeclared predicate '" + f.pred + "'");
    std::vector<int> argv;
    argv.reserve(f.args.size());
    for (const auto& t : f.args) argv.push_back(objective_.eval_term(t, asg));
    if (p->objective) {
      if (f.pred == builtin::kTrue) return pool_.truth(true);
      if (f.pred == builtin::kFalse) return pool_.truth(false);
      if (f.pred == builtin::kEquals) return pool_.truth(argv[0] == argv[1]);
      return pool_.truth(objective_.pred_holds(f.pred, argv));
    }
    GroundAtom ga{f.pred, std::move(argv)};
    auto it = atom_ids_.find(ga);
    int id;
    if (it == atom_ids_.end()) {
      id = static_cast<int>(provisional_.size());
      atom_ids_[ga] = id;
      provisional_.push_back(ga);
    } else {
      id = it->second;
    }
    return pool_.atom(id);
  }

  void mark_atoms(const Gf* f, std::vector<char>& used) {
    if (f->kind == GfKind::Atom) {
      used[f->arg] = 1;
      return;
    }
    if (f->lhs) mark_atoms(f->lhs, used);
    if (f->rhs) mark_atoms(f->rhs, used);
  }

  const Gf* remap(const Gf* f, GroundTheory& gt,
                  std::map<const Gf*, const Gf*>& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const Gf* out = nullptr;
    switch (f->kind) {
      case GfKind::True:
        out = gt.pool->truth(true);
        break;
      case GfKind::False:
        out = gt.pool->truth(false);
        break;
      case GfKind::Atom:
        out = gt.pool->atom(gt.atoms.index_of(provisional_[f->arg]));
        break;
      case GfKind::Not:
        out = gt.pool->negation(remap(f->lhs, gt, memo));
        break;
      case GfKind::And:
        out = gt.pool->conj(remap(f->lhs, gt, memo), remap(f->rhs, gt, memo));
        break;
      case GfKind::Knows:
        out = gt.pool->knows(f->arg, remap(f->lhs, gt, memo));
        break;
    }
    memo[f] = out;
    return out;
  }

  const Vocabulary& vocab_;
  const ObjectiveStructure& objective_;
  std::vector<std::string> agents_;
  std::map<std::string, int> agent_index_;
  const Config& cfg_;
  GfPool pool_;  // provisional pool
  std::map<GroundAtom, int> atom_ids_;
  std::vector<GroundAtom> provisional_;
  std::size_t steps_ = 0;
};

}  // namespace

GroundTheory ground_theory(const DistributedTheory& t, const Config& cfg,
                           const std::vector<FormulaPtr>& extra,
                           std::vector<const Gf*>* extra_out) {
  t.validate();
  Grounder g(t.vocab, t.objective, t.agents, cfg);
  std::vector<std::vector<const Gf*>> per_agent;
  per_agent.reserve(t.agents.size());
  for (const auto& group : t.sentences) {
    std::vector<const Gf*> out;
    out.reserve(group.size());
    for (const auto& s : group) out.push_back(g.ground(s));
    per_agent.push_back(std::move(out));
  }
  std::vector<const Gf*> extras;
  for (const auto& s : extra) extras.push_back(g.ground(s));
  GroundTheory gt = g.finish(std::move(per_agent), &extras);
  if (extra_out) *extra_out = std::move(extras);
  return gt;
}

GroundTheory ground_single_knower(const Vocabulary& vocab,
                                  const ObjectiveStructure& objective,
                                  const std::vector<FormulaPtr>& sentences,
                                  const Config& cfg) {
  std::vector<std::string> one{"*"};
  Grounder g(vocab, objective, one, cfg);
  std::vector<std::vector<const Gf*>> per_agent(1);
  for (const auto& s : sentences) per_agent[0].push_back(g.ground(s));
  return g.finish(std::move(per_agent), nullptr);
}

const Gf* ground_sentence(const GroundTheory& gt, const DistributedTheory& t,
                          const FormulaPtr& sentence, const Config& cfg) {
  // Ground in a fresh provisional space, then require every atom to exist in
  // the established table.
  Grounder g(t.vocab, t.objective, gt.agent_names, cfg);
  const Gf* provisional = g.ground(sentence);
  std::vector<std::vector<const Gf*>> none;
  std::vector<const Gf*> extras{provisional};
  GroundTheory tmp = g.finish(std::move(none), &extras);
  // Rebuild into the target pool with the target numbering.
  struct Rebuild {
    const GroundTheory& from;
    const GroundTheory& to;
    std::map<const Gf*, const Gf*> memo;
    const Gf* operator()(const Gf* f) {
      auto it = memo.find(f);
      if (it != memo.end()) return it->second;
      const Gf* out = nullptr;
      switch (f->kind) {
        case GfKind::True:
          out = to.pool->truth(true);
          break;
        case GfKind::False:
          out = to.pool->truth(false);
          break;
        case GfKind::Atom: {
          int id = to.atoms.index_of(from.atoms.atom(f->arg));
          if (id < 0)
            throw ValidationError(
                "formula mentions ground atom outside the theory: " +
                from.atom_name(f->arg));
          out = to.pool->atom(id);
          break;
        }
        case GfKind::Not:
          out = to.pool->negation((*this)(f->lhs));
          break;
        case GfKind::And:
          out = to.pool->conj((*this)(f->lhs), (*this)(f->rhs));
          break;
        case GfKind::Knows:
          out = to.pool->knows(f->arg, (*this)(f->lhs));
          break;
      }
      memo[f] = out;
      return out;
    }
  } rebuild{tmp, gt, {}};
  return rebuild(extras[0]);
}

FormulaPtr to_formula(const GroundTheory& gt, const Gf* f) {
  switch (f->kind) {
    case GfKind::True:
      return Formula::truth(true);
    case GfKind::False:
      return Formula::truth(false);
    case GfKind::Atom: {
      const GroundAtom& a = gt.atoms.atom(f->arg);
      std::vector<Term> args;
      args.reserve(a.args.size());
      for (int e : a.args) args.push_back(Term::app(gt.objective->name_of(e)));
      return Formula::atom(a.pred, std::move(args));
    }
    case GfKind::Not:
      return Formula::negation(to_formula(gt, f->lhs));
    case GfKind::And:
      return Formula::conj(to_formula(gt, f->lhs), to_formula(gt, f->rhs));
    case GfKind::Knows:
      return Formula::knows(Term::app(gt.agent_names.at(f->arg)),
                            to_formula(gt, f->lhs));
  }
  assert(false);
  return nullptr;
}

std::string to_string(const GroundTheory& gt, const Gf* f) {
  return to_string(to_formula(gt, f));
}

}  // namespace daelix
