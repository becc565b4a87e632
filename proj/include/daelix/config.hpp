#ifndef DAELIX_CONFIG_HPP
#define DAELIX_CONFIG_HPP

#include <cstddef>

namespace daelix {

// Resource caps for the exact lattice machinery.  World sets are explicit
// bitsets over all 2^n interpretations, so n is capped hard; the remaining
// caps bound the enumeration-style operations.
struct Config {
  int atom_cap = 20;                 // max ground subjective atoms
  std::size_t ground_cap = 1000000;  // max nodes in a grounded sentence
  std::size_t enum_cap = 1u << 16;   // max candidates for model enumeration
  int modal_cap = 16;                // max distinct modal subformulas for
                                     // supported-model enumeration
  int says_cap = 12;                 // max says-atoms per agent theory in the
                                     // query minimization procedure
  int perma_cap = 16;                // max non-nested modal occurrences for
                                     // the permaconsistency check
  int query_depth_cap = 16384;       // recursion bound for decide()
};

}  // namespace daelix

#endif
