// SGN delegation/revocation scenarios: parsing, encoding as distributed
// theories, and skeptical access decisions.

#ifndef DAELIX_SCENARIO_HPP
#define DAELIX_SCENARIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "daelix/config.hpp"
#include "daelix/theory.hpp"
#include "daelix/truth.hpp"

namespace daelix {

struct AuthorizationScenario {
  std::string owner;
  std::string resource;
  std::vector<std::string> principals;
  std::vector<std::pair<std::string, std::string>> grants;   // from -> to
  std::vector<std::pair<std::string, std::string>> revokes;  // from -> to
  std::vector<std::pair<std::string, std::string>> statements;  // issuer, text
};

// Format: `owner A; resource r; principals A,B;  grant A->B; revoke C->D;
// statement B "access(B,r) & ~access(B,r)";`  Principals may be omitted;
// they are then inferred from the other directives (owner first).
AuthorizationScenario parse_scenario(const std::string& source);

// The owner issues the access fact and the SGN propagation rule; every
// principal issues its own deleg_to/revoke facts plus extra statements.
DistributedTheory scenario_to_theory(const AuthorizationScenario& s);

enum class Semantics { Supported, KripkeKleene, Stable, PartialStable, WellFounded };

Semantics semantics_from_name(const std::string& name);  // sup|kk|st|pst|wf
std::string semantics_name(Semantics s);

struct AccessDecisionSet {
  // per principal, the value of K_owner access(X, r); undecided reads as
  // deny at the enforcement layer
  std::vector<std::pair<std::string, Truth>> decisions;

  Truth value_for(const std::string& principal) const;
  std::string str() const;  // {A^t,B^u,...}
};

AccessDecisionSet access_decision(const DistributedTheory& t,
                                  const std::string& owner,
                                  const std::string& resource, Semantics sem,
                                  const Config& cfg = {});

}  // namespace daelix

#endif
