// The query-driven distributed decision procedure: says-atom translation
// into marker propositions, minimal says-literal-set extraction over partial
// structures, and the recursive communication procedure with loop handling.

#ifndef DAELIX_QUERY_HPP
#define DAELIX_QUERY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/truth.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

// K_agent(inner), with inner carried verbatim (it may itself contain modal
// operators; those stay inside the subquery).
struct SaysAtom {
  int agent;
  const Gf* inner;
  std::string text;  // canonical rendering, for ordering and display
};

struct SaysLiteral {
  bool positive;
  int agent;
  const Gf* inner;
  std::string text;

  bool operator==(const SaysLiteral& o) const {
    return positive == o.positive && agent == o.agent && inner == o.inner;
  }
  bool operator<(const SaysLiteral& o) const {
    if (agent != o.agent) return agent < o.agent;
    if (text != o.text) return text < o.text;
    return positive > o.positive;  // positive literal first
  }
};

using SaysLiteralSet = std::vector<SaysLiteral>;  // canonically sorted

// tau(T_k): every non-nested says-atom occurrence replaced by a marker,
// positive occurrences by p+ and negative ones by p-.  Variables over the
// extended vocabulary are numbered: ground atoms first, then per says-atom
// its p+ and p- marker.
struct TranslatedTheory {
  const GroundTheory* gt = nullptr;
  std::shared_ptr<GfPool> pool;
  std::vector<SaysAtom> says;         // canonical order
  std::vector<const Gf*> sentences;   // over the extended variable space

  int n_atoms() const { return gt->atoms.size(); }
  int says_count() const { return static_cast<int>(says.size()); }
  int var_count() const { return n_atoms() + 2 * says_count(); }
  int plus_var(int s) const { return n_atoms() + 2 * s; }
  int minus_var(int s) const { return n_atoms() + 2 * s + 1; }
  int find_says(int agent, const Gf* inner) const;
};

TranslatedTheory says_translate(const GroundTheory& gt, int agent,
                                const std::vector<const Gf*>& extra = {});

// Three-valued assignment over the extended variable space of a translated
// theory. Everything defaults to unknown.
struct PartialStructure {
  std::vector<Truth> values;

  static PartialStructure unknown(const TranslatedTheory& tt);
  bool operator==(const PartialStructure& o) const { return values == o.values; }
};

// True when some total expansion of s satisfies every sentence.
bool is_partial_model(const TranslatedTheory& tt, const PartialStructure& s,
                      const Config& cfg = {});

// Greedy unassignment in canonical variable order; the result is a
// <=_p-minimal structure below s that is still not a partial model.
// Throws when s is a partial model.
PartialStructure min_incons(const TranslatedTheory& tt,
                            const PartialStructure& s, const Config& cfg = {});

// The says-literal reading of a partial structure: p- true contributes the
// positive literal, p+ false the negated one.
SaysLiteralSet says_literals_of(const TranslatedTheory& tt,
                                const PartialStructure& s);

// Algorithm "Query Minimization": all minimal says-literal sets that make
// the query true relative to the agent's theory.
std::vector<SaysLiteralSet> query_minimize(const GroundTheory& gt, int agent,
                                           const Gf* query,
                                           const Config& cfg = {});

// "L makes phi true relative to T": phi is true in every interpretation in
// which the theory, evaluated with says-atoms fixed by L, is not false.
bool holds_given_literals(const GroundTheory& gt, int agent, const Gf* query,
                          const SaysLiteralSet& lits);

// ---- the communication procedure ----

struct QueryGraph {
  struct QueryVertex {
    int agent;
    const Gf* formula;
    std::string text;
    std::optional<Truth> label;
    std::vector<int> sets;   // outgoing set-vertex ids
    bool loop = false;               // labelled by loop detection
    bool loop_over_negation = false; // some edge on the loop path was an f-edge
  };
  struct SetVertex {
    SaysLiteralSet literals;
    int parent = -1;                              // query vertex id
    std::vector<std::pair<int, bool>> children;   // (query vertex, t-edge?)
  };
  std::vector<QueryVertex> queries;
  std::vector<SetVertex> sets;
  int root = 0;

  std::string to_dot(const std::vector<std::string>& agent_names) const;
};

struct TraceEvent {
  int asker;
  int askee;
  std::string query;
  Truth answer;
  bool remote;  // askee differs from asker
};

struct DecideResult {
  Truth value;
  QueryGraph graph;
  std::vector<TraceEvent> trace;
};

// The per-agent boundary of the simulated message bus: an agent answers,
// for a subquery against its own theory, which minimal says-literal sets
// would verify it.  Nothing else crosses the boundary.
class SupportOracle {
 public:
  virtual ~SupportOracle() = default;
  virtual const std::vector<SaysLiteralSet>& minimal_support(const Gf* query) = 0;
};

std::vector<std::unique_ptr<SupportOracle>> local_support_oracles(
    const GroundTheory& gt, const Config& cfg = {});

// Runs the communication procedure for the directed query <agent:query>.
DecideResult decide(const GroundTheory& gt, int agent, const Gf* query,
                    const Config& cfg = {});
DecideResult decide_with(std::vector<std::unique_ptr<SupportOracle>>& agents,
                         const GroundTheory& gt, int agent, const Gf* query,
                         const Config& cfg = {});

}  // namespace daelix

#endif
