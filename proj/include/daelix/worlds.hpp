// World sets, distributed possible world structures, belief pairs, the
// knowledge and precision orders, and the two- and three-valued valuations.
//
// A world (Interp) is a bitmask over the ground atom table; a WorldSet is an
// explicit bitset over all 2^n worlds.  Fewer worlds = more knowledge, so
// Q1 <=_K Q2 iff Q2 is a subset of Q1.

#ifndef DAELIX_WORLDS_HPP
#define DAELIX_WORLDS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "daelix/ground.hpp"
#include "daelix/truth.hpp"

namespace daelix {

using Interp = uint32_t;

class WorldSet {
 public:
  WorldSet() = default;
  static WorldSet none(int n_atoms);
  static WorldSet all(int n_atoms);
  // Worlds whose bit k is set, i.e. worlds where atom k is true.
  static WorldSet atom_pattern(int n_atoms, int k);

  int n_atoms() const { return n_atoms_; }
  std::size_t universe() const { return std::size_t{1} << n_atoms_; }

  bool test(Interp w) const { return (bits_[w >> 6] >> (w & 63)) & 1; }
  void set(Interp w) { bits_[w >> 6] |= uint64_t{1} << (w & 63); }
  void reset(Interp w) { bits_[w >> 6] &= ~(uint64_t{1} << (w & 63)); }

  bool empty() const;
  std::size_t count() const;
  bool subset_of(const WorldSet& o) const;

  WorldSet operator&(const WorldSet& o) const;
  WorldSet operator|(const WorldSet& o) const;
  WorldSet complement() const;
  WorldSet& operator&=(const WorldSet& o);

  bool operator==(const WorldSet& o) const {
    return n_atoms_ == o.n_atoms_ && bits_ == o.bits_;
  }
  bool operator<(const WorldSet& o) const { return bits_ < o.bits_; }

  void for_each_world(const std::function<void(Interp)>& fn) const;
  std::vector<Interp> worlds() const;

 private:
  explicit WorldSet(int n_atoms);
  uint64_t tail_mask() const;
  int n_atoms_ = 0;
  std::vector<uint64_t> bits_;
};

// Distributed possible world structure: one world set per agent.
struct Dpws {
  std::vector<WorldSet> per_agent;

  static Dpws bottom(int agents, int n_atoms);  // no knowledge anywhere
  static Dpws top(int agents, int n_atoms);     // inconsistent everywhere

  int agent_count() const { return static_cast<int>(per_agent.size()); }
  bool operator==(const Dpws& o) const { return per_agent == o.per_agent; }
  bool operator<(const Dpws& o) const { return per_agent < o.per_agent; }
};

// Pair of DPWSs bounding an unknown state of mind: conservative bound below,
// liberal bound above in the knowledge order.
struct BeliefPair {
  Dpws conservative;
  Dpws liberal;

  static BeliefPair least_precise(int agents, int n_atoms);
  bool consistent() const;
  bool exact() const { return conservative == liberal; }
  bool operator==(const BeliefPair& o) const {
    return conservative == o.conservative && liberal == o.liberal;
  }
  bool operator<(const BeliefPair& o) const {
    if (!(conservative == o.conservative)) return conservative < o.conservative;
    return liberal < o.liberal;
  }
};

enum class OrderResult { Equal, LessEqual, GreaterEqual, Incomparable };

bool leq_knowledge(const WorldSet& a, const WorldSet& b);
bool leq_knowledge(const Dpws& a, const Dpws& b);
bool leq_precision(const BeliefPair& a, const BeliefPair& b);
OrderResult compare_knowledge(const Dpws& a, const Dpws& b);
OrderResult compare_precision(const BeliefPair& a, const BeliefPair& b);

// lub in the knowledge order: componentwise intersection.
Dpws lub_knowledge(const std::vector<Dpws>& sets);

bool is_universally_consistent(const Dpws& q);
bool is_universally_consistent(const BeliefPair& b);

// Bitset evaluation over all worlds at once.  Modal subformulas are
// world-independent and cached per call.
class SetEvaluator {
 public:
  explicit SetEvaluator(const GroundTheory& gt);

  // Worlds satisfying f under the two-valued valuation.
  WorldSet sat2(const Gf* f, const Dpws& q) const;

  // (certainly-true worlds, possibly-true worlds) under the four-valued
  // reading of the pair valuation; defined for inconsistent pairs as well
  // and <=_p-monotone over the whole bilattice.
  std::pair<WorldSet, WorldSet> sat4(const Gf* f, const BeliefPair& b) const;

  const WorldSet& atom_worlds(int atom) const { return atom_sets_[atom]; }
  const GroundTheory& theory() const { return gt_; }

 private:
  const GroundTheory& gt_;
  std::vector<WorldSet> atom_sets_;
};

// Point valuations (recursive rules of the paper definitions).
bool eval2(const SetEvaluator& ev, const Gf* f, const Dpws& q, Interp w);
// Requires a consistent pair.
Truth eval3(const SetEvaluator& ev, const Gf* f, const BeliefPair& b, Interp w);

}  // namespace daelix

#endif
