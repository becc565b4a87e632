// Brute-force cross-checks: model sets recomputed by exhaustive enumeration
// over the full DPWS product space and compared against the engine's
// constructions, plus the fast-path and query-procedure equivalences.

#ifndef DAELIX_ORACLE_HPP
#define DAELIX_ORACLE_HPP

#include <string>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/theory.hpp"
#include "daelix/worlds.hpp"

namespace daelix {

// Enumeration of the full product space; feasible only at tiny sizes.
bool brute_enumeration_feasible(const GroundTheory& gt, const Config& cfg = {});
std::vector<Dpws> brute_all_dpws(const GroundTheory& gt);
std::vector<Dpws> brute_supported(const SetEvaluator& ev);
std::vector<Dpws> brute_stable(const SetEvaluator& ev);
std::vector<BeliefPair> brute_partial_stable(const SetEvaluator& ev);

struct OracleReport {
  bool ok = true;
  std::vector<std::string> checks;      // names of checks performed
  std::vector<std::string> mismatches;  // human-readable findings
};

OracleReport brute_force_cross_check(const DistributedTheory& t,
                                     const Config& cfg = {});

}  // namespace daelix

#endif
