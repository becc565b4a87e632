#include "daelix/worlds.hpp"

#include <cassert>
#include <unordered_map>

#include "daelix/errors.hpp"

namespace daelix {

WorldSet::WorldSet(int n_atoms) : n_atoms_(n_atoms) {
  std::size_t worlds = std::size_t{1} << n_atoms;
  bits_.assign((worlds + 63) / 64, 0);
}

uint64_t WorldSet::tail_mask() const {
  std::size_t worlds = universe();
  unsigned rem = worlds & 63;
  return rem ? ((uint64_t{1} << rem) - 1) : ~uint64_t{0};
}

WorldSet WorldSet::none(int n_atoms) { return WorldSet(n_atoms); }

WorldSet WorldSet::all(int n_atoms) {
  WorldSet s(n_atoms);
  for (auto& w : s.bits_) w = ~uint64_t{0};
  s.bits_.back() &= s.tail_mask();
  return s;
}

WorldSet WorldSet::atom_pattern(int n_atoms, int k) {
  WorldSet s(n_atoms);
  if (k >= 6) {
    for (std::size_t i = 0; i < s.bits_.size(); ++i)
      if ((i >> (k - 6)) & 1) s.bits_[i] = ~uint64_t{0};
  } else {
    uint64_t pattern = 0;
    for (int j = 0; j < 64; ++j)
      if ((j >> k) & 1) pattern |= uint64_t{1} << j;
    for (auto& w : s.bits_) w = pattern;
  }
  s.bits_.back() &= s.tail_mask();
  return s;
}

bool WorldSet::empty() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

std::size_t WorldSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += __builtin_popcountll(w);
  return c;
}

bool WorldSet::subset_of(const WorldSet& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

WorldSet WorldSet::operator&(const WorldSet& o) const {
  WorldSet r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

WorldSet WorldSet::operator|(const WorldSet& o) const {
  WorldSet r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

WorldSet& WorldSet::operator&=(const WorldSet& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

WorldSet WorldSet::complement() const {
  WorldSet r(*this);
  for (auto& w : r.bits_) w = ~w;
  r.bits_.back() &= tail_mask();
  return r;
}

void WorldSet::for_each_world(const std::function<void(Interp)>& fn) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    uint64_t w = bits_[i];
    while (w) {
      unsigned b = __builtin_ctzll(w);
      fn(static_cast<Interp>(i * 64 + b));
      w &= w - 1;
    }
  }
}

std::vector<Interp> WorldSet::worlds() const {
  std::vector<Interp> out;
  out.reserve(count());
  for_each_world([&](Interp w) { out.push_back(w); });
  return out;
}

Dpws Dpws::bottom(int agents, int n_atoms) {
  Dpws q;
  q.per_agent.assign(agents, WorldSet::all(n_atoms));
  return q;
}

Dpws Dpws::top(int agents, int n_atoms) {
  Dpws q;
  q.per_agent.assign(agents, WorldSet::none(n_atoms));
  return q;
}

BeliefPair BeliefPair::least_precise(int agents, int n_atoms) {
  return BeliefPair{Dpws::bottom(agents, n_atoms), Dpws::top(agents, n_atoms)};
}

bool BeliefPair::consistent() const {
  return leq_knowledge(conservative, liberal);
}

bool leq_knowledge(const WorldSet& a, const WorldSet& b) {
  return b.subset_of(a);
}

bool leq_knowledge(const Dpws& a, const Dpws& b) {
  assert(a.agent_count() == b.agent_count());
  for (int i = 0; i < a.agent_count(); ++i)
    if (!leq_knowledge(a.per_agent[i], b.per_agent[i])) return false;
  return true;
}

bool leq_precision(const BeliefPair& a, const BeliefPair& b) {
  return leq_knowledge(a.conservative, b.conservative) &&
         leq_knowledge(b.liberal, a.liberal);
}

static OrderResult order_from(bool le, bool ge) {
  if (le && ge) return OrderResult::Equal;
  if (le) return OrderResult::LessEqual;
  if (ge) return OrderResult::GreaterEqual;
  return OrderResult::Incomparable;
}

OrderResult compare_knowledge(const Dpws& a, const Dpws& b) {
  if (a.agent_count() != b.agent_count() ||
      (a.agent_count() &&
       a.per_agent[0].n_atoms() != b.per_agent[0].n_atoms()))
    throw ValidationError("compare_knowledge: mismatched vocabularies");
  return order_from(leq_knowledge(a, b), leq_knowledge(b, a));
}

OrderResult compare_precision(const BeliefPair& a, const BeliefPair& b) {
  if (a.conservative.agent_count() != b.conservative.agent_count() ||
      (a.conservative.agent_count() &&
       a.conservative.per_agent[0].n_atoms() !=
           b.conservative.per_agent[0].n_atoms()))
    throw ValidationError("compare_precision: mismatched vocabularies");
  return order_from(leq_precision(a, b), leq_precision(b, a));
}

Dpws lub_knowledge(const std::vector<Dpws>& sets) {
  assert(!sets.empty());
  Dpws out = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i)
    for (int a = 0; a < out.agent_count(); ++a)
      out.per_agent[a] &= sets[i].per_agent[a];
  return out;
}

bool is_universally_consistent(const Dpws& q) {
  for (const auto& w : q.per_agent)
    if (w.empty()) return false;
  return true;
}

bool is_universally_consistent(const BeliefPair& b) {
  return is_universally_consistent(b.liberal);
}

SetEvaluator::SetEvaluator(const GroundTheory& gt) : gt_(gt) {
  int n = gt.atoms.size();
  atom_sets_.reserve(n);
  for (int k = 0; k < n; ++k)
    atom_sets_.push_back(WorldSet::atom_pattern(n, k));
}

namespace {

struct Sat2Ctx {
  const SetEvaluator& ev;
  const Dpws& q;
  std::unordered_map<const Gf*, WorldSet> memo;
};

WorldSet sat2_rec(Sat2Ctx& c, const Gf* f) {
  auto it = c.memo.find(f);
  if (it != c.memo.end()) return it->second;
  int n = c.ev.theory().atoms.size();
  WorldSet out;
  switch (f->kind) {
    case GfKind::True:
      out = WorldSet::all(n);
      break;
    case GfKind::False:
      out = WorldSet::none(n);
      break;
    case GfKind::Atom:
      out = c.ev.atom_worlds(f->arg);
      break;
    case GfKind::Not:
      out = sat2_rec(c, f->lhs).complement();
      break;
    case GfKind::And:
      out = sat2_rec(c, f->lhs) & sat2_rec(c, f->rhs);
      break;
    case GfKind::Knows: {
      WorldSet sub = sat2_rec(c, f->lhs);
      bool holds = c.q.per_agent[f->arg].subset_of(sub);
      out = holds ? WorldSet::all(n) : WorldSet::none(n);
      break;
    }
  }
  c.memo.emplace(f, out);
  return out;
}

struct Sat4Ctx {
  const SetEvaluator& ev;
  const BeliefPair& b;
  std::unordered_map<const Gf*, std::pair<WorldSet, WorldSet>> memo;
};

// (certainly-true set, possibly-true set)
std::pair<WorldSet, WorldSet> sat4_rec(Sat4Ctx& c, const Gf* f) {
  auto it = c.memo.find(f);
  if (it != c.memo.end()) return it->second;
  int n = c.ev.theory().atoms.size();
  std::pair<WorldSet, WorldSet> out;
  switch (f->kind) {
    case GfKind::True:
      out = {WorldSet::all(n), WorldSet::all(n)};
      break;
    case GfKind::False:
      out = {WorldSet::none(n), WorldSet::none(n)};
      break;
    case GfKind::Atom:
      out = {c.ev.atom_worlds(f->arg), c.ev.atom_worlds(f->arg)};
      break;
    case GfKind::Not: {
      auto sub = sat4_rec(c, f->lhs);
      out = {sub.second.complement(), sub.first.complement()};
      break;
    }
    case GfKind::And: {
      auto l = sat4_rec(c, f->lhs);
      auto r = sat4_rec(c, f->rhs);
      out = {l.first & r.first, l.second & r.second};
      break;
    }
    case GfKind::Knows: {
      auto sub = sat4_rec(c, f->lhs);
      bool cons = c.b.conservative.per_agent[f->arg].subset_of(sub.first);
      bool poss = c.b.liberal.per_agent[f->arg].subset_of(sub.second);
      out = {cons ? WorldSet::all(n) : WorldSet::none(n),
             poss ? WorldSet::all(n) : WorldSet::none(n)};
      break;
    }
  }
  c.memo.emplace(f, out);
  return out;
}

}  // namespace

WorldSet SetEvaluator::sat2(const Gf* f, const Dpws& q) const {
  Sat2Ctx c{*this, q, {}};
  return sat2_rec(c, f);
}

std::pair<WorldSet, WorldSet> SetEvaluator::sat4(const Gf* f,
                                                 const BeliefPair& b) const {
  Sat4Ctx c{*this, b, {}};
  return sat4_rec(c, f);
}

bool eval2(const SetEvaluator& ev, const Gf* f, const Dpws& q, Interp w) {
  return ev.sat2(f, q).test(w);
}

Truth eval3(const SetEvaluator& ev, const Gf* f, const BeliefPair& b,
            Interp w) {
  if (!b.consistent())
    throw ValidationError("eval3 requires a consistent belief pair");
  auto sets = ev.sat4(f, b);
  if (sets.first.test(w)) return Truth::True;
  if (sets.second.test(w)) return Truth::Unknown;
  return Truth::False;
}

}  // namespace daelix
