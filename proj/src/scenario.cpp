#include "daelix/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "daelix/engine.hpp"
#include "daelix/errors.hpp"
#include "daelix/ground.hpp"
#include "daelix/lp.hpp"
#include "daelix/parser.hpp"

namespace daelix {

namespace {

struct ScenarioLexer {
  const std::string& src;
  size_t pos = 0;

  void skip_ws() {
    for (;;) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
        ++pos;
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  }

  bool done() {
    skip_ws();
    return pos >= src.size();
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_'))
      ++pos;
    if (start == pos)
      throw ValidationError("scenario: expected identifier near '" +
                            src.substr(pos, 10) + "'");
    return src.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      throw ValidationError(std::string("scenario: expected '") + c + "'");
    ++pos;
  }

  bool try_char(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string quoted() {
    skip_ws();
    expect('"');
    size_t start = pos;
    while (pos < src.size() && src[pos] != '"') ++pos;
    if (pos >= src.size()) throw ValidationError("scenario: unterminated string");
    std::string s = src.substr(start, pos - start);
    ++pos;
    return s;
  }
};

void note_principal(std::vector<std::string>& out, const std::string& p) {
  if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

}  // namespace

AuthorizationScenario parse_scenario(const std::string& source) {
  AuthorizationScenario s;
  ScenarioLexer lex{source};
  bool explicit_principals = false;
  while (!lex.done()) {
    std::string head = lex.ident();
    if (head == "owner") {
      s.owner = lex.ident();
    } else if (head == "resource") {
      s.resource = lex.ident();
    } else if (head == "principals") {
      explicit_principals = true;
      for (;;) {
        s.principals.push_back(lex.ident());
        if (!lex.try_char(',')) break;
      }
    } else if (head == "grant" || head == "revoke") {
      std::string from = lex.ident();
      lex.expect('-');
      lex.expect('>');
      std::string to = lex.ident();
      (head == "grant" ? s.grants : s.revokes).push_back({from, to});
    } else if (head == "statement") {
      std::string issuer = lex.ident();
      s.statements.push_back({issuer, lex.quoted()});
    } else {
      throw ValidationError("scenario: unknown directive '" + head + "'");
    }
    lex.expect(';');
  }
  if (s.owner.empty()) throw ValidationError("scenario: missing owner");
  if (s.resource.empty()) throw ValidationError("scenario: missing resource");
  if (!explicit_principals) {
    note_principal(s.principals, s.owner);
    for (const auto& e : s.grants) {
      note_principal(s.principals, e.first);
      note_principal(s.principals, e.second);
    }
    for (const auto& e : s.revokes) {
      note_principal(s.principals, e.first);
      note_principal(s.principals, e.second);
    }
    for (const auto& st : s.statements) note_principal(s.principals, st.first);
  }
  return s;
}

DistributedTheory scenario_to_theory(const AuthorizationScenario& s) {
  if (std::find(s.principals.begin(), s.principals.end(), s.owner) ==
      s.principals.end())
    throw ValidationError("scenario: owner is not a principal");
  for (const auto& edges : {s.grants, s.revokes})
    for (const auto& e : edges)
      for (const auto& p : {e.first, e.second})
        if (std::find(s.principals.begin(), s.principals.end(), p) ==
            s.principals.end())
          throw ValidationError("scenario: unknown principal '" + p + "'");

  std::ostringstream src;
  src << "agents ";
  for (size_t i = 0; i < s.principals.size(); ++i)
    src << (i ? "," : "") << s.principals[i];
  src << ".\n";
  src << "domain { " << s.resource << " }.\n";
  src << "pred access/2.\npred deleg_to/1.\npred revoke/1.\n";
  for (const auto& p : s.principals) {
    src << "theory " << p << " {\n";
    if (p == s.owner) {
      src << "  access(" << s.owner << "," << s.resource << ").\n";
      src << "  forall j: ((exists k: (K[" << s.owner << "] access(k,"
          << s.resource << ") & K[k] deleg_to(j)))"
          << " & ~(exists i: (K[" << s.owner << "] access(i," << s.resource
          << ") & K[i] revoke(j)))) => access(j," << s.resource << ").\n";
    }
    for (const auto& e : s.grants)
      if (e.first == p) src << "  deleg_to(" << e.second << ").\n";
    for (const auto& e : s.revokes)
      if (e.first == p) src << "  revoke(" << e.second << ").\n";
    for (const auto& st : s.statements)
      if (st.first == p) src << "  " << st.second << ".\n";
    src << "}\n";
  }
  return parse_theory(src.str());
}

Semantics semantics_from_name(const std::string& name) {
  if (name == "sup") return Semantics::Supported;
  if (name == "kk") return Semantics::KripkeKleene;
  if (name == "st") return Semantics::Stable;
  if (name == "pst") return Semantics::PartialStable;
  if (name == "wf") return Semantics::WellFounded;
  throw ValidationError("unknown semantics '" + name +
                        "' (expected sup|kk|st|pst|wf)");
}

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::Supported: return "sup";
    case Semantics::KripkeKleene: return "kk";
    case Semantics::Stable: return "st";
    case Semantics::PartialStable: return "pst";
    case Semantics::WellFounded: return "wf";
  }
  return "?";
}

Truth AccessDecisionSet::value_for(const std::string& principal) const {
  for (const auto& d : decisions)
    if (d.first == principal) return d.second;
  throw ValidationError("no decision for '" + principal + "'");
}

std::string AccessDecisionSet::str() const {
  std::string out = "{";
  for (size_t i = 0; i < decisions.size(); ++i) {
    if (i) out += ",";
    out += decisions[i].first;
    out += "^";
    out += truth_char(decisions[i].second);
  }
  return out + "}";
}

AccessDecisionSet access_decision(const DistributedTheory& t,
                                  const std::string& owner,
                                  const std::string& resource, Semantics sem,
                                  const Config& cfg) {
  int owner_idx = t.agent_index(owner);
  if (owner_idx < 0) throw ValidationError("owner is not an agent");
  GroundTheory gt = ground_theory(t, cfg);
  int res_elem = gt.objective->element(resource);

  auto access_atom = [&](const std::string& principal) {
    GroundAtom a{"access", {gt.objective->element(principal), res_elem}};
    return gt.atoms.index_of(a);
  };

  AccessDecisionSet out;
  RuleCheck rc = is_rule_theory(gt);

  if (sem == Semantics::WellFounded || sem == Semantics::PartialStable) {
    // Skeptical partial-stable merging always equals the well-founded
    // reading, so both route here.
    if (rc.ok) {
      LiteralBeliefPair wf = fast_well_founded(gt);
      for (const auto& p : t.agents) {
        int atom = access_atom(p);
        Truth v = atom < 0 ? Truth::False
                           : wf.eval_knows(owner_idx, atom, true);
        out.decisions.push_back({p, v});
      }
      return out;
    }
    SetEvaluator ev(gt);
    BeliefPair wf = well_founded(ev);
    for (const auto& p : t.agents) {
      int atom = access_atom(p);
      Truth v = atom < 0 ? Truth::False
                         : eval3(ev, gt.pool->knows(owner_idx,
                                                    gt.pool->atom(atom)),
                                 wf, 0);
      out.decisions.push_back({p, v});
    }
    return out;
  }

  if (sem == Semantics::KripkeKleene) {
    SetEvaluator ev(gt);
    BeliefPair kk = kripke_kleene(ev);
    for (const auto& p : t.agents) {
      int atom = access_atom(p);
      Truth v = atom < 0 ? Truth::False
                         : eval3(ev, gt.pool->knows(owner_idx,
                                                    gt.pool->atom(atom)),
                                 kk, 0);
      out.decisions.push_back({p, v});
    }
    return out;
  }

  // supported / stable: skeptical merge over the model set
  SetEvaluator ev(gt);
  std::vector<Dpws> models;
  if (rc.ok)
    models = sem == Semantics::Supported ? rule_supported_models(ev, cfg)
                                         : rule_stable_models(ev, cfg);
  else
    models = sem == Semantics::Supported ? supported_models(ev, cfg)
                                         : stable_models(ev, cfg);
  for (const auto& p : t.agents) {
    int atom = access_atom(p);
    if (atom < 0 || models.empty()) {
      // no atom or no model: nothing justifies a grant
      out.decisions.push_back({p, models.empty() ? Truth::Unknown : Truth::False});
      continue;
    }
    const Gf* k = gt.pool->knows(owner_idx, gt.pool->atom(atom));
    bool all_true = true, all_false = true;
    for (const auto& q : models) {
      bool v = eval2(ev, k, q, 0);
      all_true = all_true && v;
      all_false = all_false && !v;
    }
    Truth v = all_true ? Truth::True : all_false ? Truth::False : Truth::Unknown;
    out.decisions.push_back({p, v});
  }
  return out;
}

}  // namespace daelix
