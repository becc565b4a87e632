#include "daelix/query.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

#include "daelix/errors.hpp"

namespace daelix {

int TranslatedTheory::find_says(int agent, const Gf* inner) const {
  for (size_t i = 0; i < says.size(); ++i)
    if (says[i].agent == agent && says[i].inner == inner)
      return static_cast<int>(i);
  return -1;
}

namespace {

// Collects the says-atoms occurring outside the scope of other says-atoms.
void collect_says(const GroundTheory& gt, const Gf* f,
                  std::vector<SaysAtom>& out) {
  switch (f->kind) {
    case GfKind::Knows: {
      for (const auto& s : out)
        if (s.agent == f->arg && s.inner == f->lhs) return;
      out.push_back(SaysAtom{f->arg, f->lhs, to_string(gt, f->lhs)});
      return;
    }
    case GfKind::Not:
      collect_says(gt, f->lhs, out);
      return;
    case GfKind::And:
      collect_says(gt, f->lhs, out);
      collect_says(gt, f->rhs, out);
      return;
    default:
      return;
  }
}

const Gf* replace_says(const TranslatedTheory& tt, GfPool& pool, const Gf* f,
                       bool positive) {
  switch (f->kind) {
    case GfKind::True:
    case GfKind::False:
      return pool.truth(f->kind == GfKind::True);
    case GfKind::Atom:
      return pool.atom(f->arg);
    case GfKind::Not:
      return pool.negation(replace_says(tt, pool, f->lhs, !positive));
    case GfKind::And:
      return pool.conj(replace_says(tt, pool, f->lhs, positive),
                       replace_says(tt, pool, f->rhs, positive));
    case GfKind::Knows: {
      int s = tt.find_says(f->arg, f->lhs);
      assert(s >= 0);
      return pool.atom(positive ? tt.plus_var(s) : tt.minus_var(s));
    }
  }
  assert(false);
  return nullptr;
}

}  // namespace

TranslatedTheory says_translate(const GroundTheory& gt, int agent,
                                const std::vector<const Gf*>& extra) {
  TranslatedTheory tt;
  tt.gt = &gt;
  tt.pool = std::make_shared<GfPool>();
  std::vector<SaysAtom> found;
  for (const Gf* s : gt.sentences[agent]) collect_says(gt, s, found);
  for (const Gf* s : extra) collect_says(gt, s, found);
  std::sort(found.begin(), found.end(),
            [](const SaysAtom& a, const SaysAtom& b) {
              if (a.agent != b.agent) return a.agent < b.agent;
              return a.text < b.text;
            });
  tt.says = std::move(found);
  for (const Gf* s : gt.sentences[agent])
    tt.sentences.push_back(replace_says(tt, *tt.pool, s, true));
  for (const Gf* s : extra)
    tt.sentences.push_back(replace_says(tt, *tt.pool, s, true));
  return tt;
}

PartialStructure PartialStructure::unknown(const TranslatedTheory& tt) {
  PartialStructure s;
  s.values.assign(tt.var_count(), Truth::Unknown);
  return s;
}

namespace {

bool eval_bits(const Gf* f, const std::vector<char>& bits) {
  switch (f->kind) {
    case GfKind::True:
      return true;
    case GfKind::False:
      return false;
    case GfKind::Atom:
      return bits[f->arg] != 0;
    case GfKind::Not:
      return !eval_bits(f->lhs, bits);
    case GfKind::And:
      return eval_bits(f->lhs, bits) && eval_bits(f->rhs, bits);
    case GfKind::Knows:
      break;
  }
  assert(false);
  return false;
}

bool all_sentences_hold(const TranslatedTheory& tt,
                        const std::vector<char>& bits) {
  for (const Gf* s : tt.sentences)
    if (!eval_bits(s, bits)) return false;
  return true;
}

}  // namespace

bool is_partial_model(const TranslatedTheory& tt, const PartialStructure& s,
                      const Config& cfg) {
  (void)cfg;
  int n = tt.var_count();
  std::vector<int> free;
  std::vector<char> bits(n, 0);
  for (int i = 0; i < n; ++i) {
    if (s.values[i] == Truth::Unknown)
      free.push_back(i);
    else
      bits[i] = s.values[i] == Truth::True;
  }
  if (free.size() > 26)
    throw CapExceeded("partial-model check over " +
                      std::to_string(free.size()) + " free variables");
  uint64_t total = uint64_t{1} << free.size();
  for (uint64_t mask = 0; mask < total; ++mask) {
    for (size_t i = 0; i < free.size(); ++i) bits[free[i]] = (mask >> i) & 1;
    if (all_sentences_hold(tt, bits)) return true;
  }
  return false;
}

PartialStructure min_incons(const TranslatedTheory& tt,
                            const PartialStructure& s, const Config& cfg) {
  if (is_partial_model(tt, s, cfg))
    throw ValidationError("min_incons called on a partial model");
  PartialStructure out = s;
  for (int i = 0; i < tt.var_count(); ++i) {
    if (out.values[i] == Truth::Unknown) continue;
    Truth saved = out.values[i];
    out.values[i] = Truth::Unknown;
    if (is_partial_model(tt, out, cfg)) out.values[i] = saved;
  }
  return out;
}

SaysLiteralSet says_literals_of(const TranslatedTheory& tt,
                                const PartialStructure& s) {
  SaysLiteralSet out;
  for (int i = 0; i < tt.says_count(); ++i) {
    const SaysAtom& sa = tt.says[i];
    if (s.values[tt.minus_var(i)] == Truth::True)
      out.push_back(SaysLiteral{true, sa.agent, sa.inner, sa.text});
    if (s.values[tt.plus_var(i)] == Truth::False)
      out.push_back(SaysLiteral{false, sa.agent, sa.inner, sa.text});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// canonical order over literal sets: fewer negated literals first, then
// smaller sets, then lexicographic
bool set_less(const SaysLiteralSet& a, const SaysLiteralSet& b) {
  auto negs = [](const SaysLiteralSet& s) {
    return std::count_if(s.begin(), s.end(),
                         [](const SaysLiteral& l) { return !l.positive; });
  };
  auto na = negs(a), nb = negs(b);
  if (na != nb) return na < nb;
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<SaysLiteralSet> query_minimize(const GroundTheory& gt, int agent,
                                           const Gf* query, const Config& cfg) {
  const Gf* negated = gt.pool->negation(query);
  TranslatedTheory tt = says_translate(gt, agent, {negated});
  if (tt.says_count() > cfg.says_cap)
    throw CapExceeded("query minimization over " +
                      std::to_string(tt.says_count()) + " says-atoms");

  std::vector<SaysLiteralSet> out;
  int s = tt.says_count();
  std::vector<int> odo(s, 0);  // 0 = unknown, 1 = true, 2 = false
  for (;;) {
    PartialStructure ps = PartialStructure::unknown(tt);
    for (int i = 0; i < s; ++i) {
      if (odo[i] == 1) ps.values[tt.minus_var(i)] = Truth::True;
      if (odo[i] == 2) ps.values[tt.plus_var(i)] = Truth::False;
    }
    if (!is_partial_model(tt, ps, cfg)) {
      SaysLiteralSet lits = says_literals_of(tt, min_incons(tt, ps, cfg));
      bool known = false;
      for (const auto& l : out)
        if (l == lits) {
          known = true;
          break;
        }
      if (!known) out.push_back(std::move(lits));
    }
    int i = 0;
    while (i < s) {
      if (++odo[i] < 3) break;
      odo[i] = 0;
      ++i;
    }
    if (i == s) break;
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

namespace {

Truth literal_valuation(const GroundTheory& gt, const Gf* f,
                        const SaysLiteralSet& lits, Interp w) {
  switch (f->kind) {
    case GfKind::True:
      return Truth::True;
    case GfKind::False:
      return Truth::False;
    case GfKind::Atom:
      return truth_of((w >> f->arg) & 1);
    case GfKind::Not:
      return truth_not(literal_valuation(gt, f->lhs, lits, w));
    case GfKind::And:
      return truth_and(literal_valuation(gt, f->lhs, lits, w),
                       literal_valuation(gt, f->rhs, lits, w));
    case GfKind::Knows: {
      for (const auto& l : lits)
        if (l.agent == f->arg && l.inner == f->lhs)
          return l.positive ? Truth::True : Truth::False;
      return Truth::Unknown;
    }
  }
  assert(false);
  return Truth::Unknown;
}

}  // namespace

bool holds_given_literals(const GroundTheory& gt, int agent, const Gf* query,
                          const SaysLiteralSet& lits) {
  std::size_t worlds = std::size_t{1} << gt.atoms.size();
  for (Interp w = 0; w < worlds; ++w) {
    Truth theory = Truth::True;
    for (const Gf* s : gt.sentences[agent])
      theory = truth_and(theory, literal_valuation(gt, s, lits, w));
    if (theory == Truth::False) continue;
    if (literal_valuation(gt, query, lits, w) != Truth::True) return false;
  }
  return true;
}

// ---- communication procedure ----

namespace {

class LocalSupportOracle : public SupportOracle {
 public:
  LocalSupportOracle(const GroundTheory& gt, int agent, const Config& cfg)
      : gt_(gt), agent_(agent), cfg_(cfg) {}

  const std::vector<SaysLiteralSet>& minimal_support(const Gf* query) override {
    auto it = memo_.find(query);
    if (it != memo_.end()) return it->second;
    auto r = memo_.emplace(query, query_minimize(gt_, agent_, query, cfg_));
    return r.first->second;
  }

 private:
  const GroundTheory& gt_;
  int agent_;
  Config cfg_;
  std::unordered_map<const Gf*, std::vector<SaysLiteralSet>> memo_;
};

struct PathEntry {
  int agent;
  const Gf* formula;
  bool incoming_true_edge;  // sign of the labelled edge into this vertex
};

class Session {
 public:
  Session(std::vector<std::unique_ptr<SupportOracle>>& agents,
          const GroundTheory& gt, const Config& cfg)
      : agents_(agents), gt_(gt), cfg_(cfg) {}

  DecideResult run(int agent, const Gf* query) {
    int root = new_query_vertex(agent, query);
    result_.graph.root = root;
    std::vector<PathEntry> path;
    path.push_back(PathEntry{agent, query, true});  // root may anchor a loop
    visit(root, path);
    result_.value = *result_.graph.queries[root].label;
    return std::move(result_);
  }

 private:
  int new_query_vertex(int agent, const Gf* f) {
    QueryGraph::QueryVertex v;
    v.agent = agent;
    v.formula = f;
    v.text = to_string(gt_, f);
    result_.graph.queries.push_back(std::move(v));
    return static_cast<int>(result_.graph.queries.size()) - 1;
  }

  void visit(int vid, std::vector<PathEntry>& path) {
    if (path.size() > static_cast<size_t>(cfg_.query_depth_cap))
      throw CapExceeded("query recursion depth");
    auto& g = result_.graph;
    int agent = g.queries[vid].agent;
    const Gf* formula = g.queries[vid].formula;
    const auto& support = agents_[agent]->minimal_support(formula);

    for (const auto& lits : support) {
      if (g.queries[vid].label) break;  // answer already known
      int sid = static_cast<int>(g.sets.size());
      g.sets.push_back(QueryGraph::SetVertex{lits, vid, {}});
      g.queries[vid].sets.push_back(sid);
      bool satisfied = true;
      for (const auto& lit : lits) {
        int child = new_query_vertex(lit.agent, lit.inner);
        g.sets[sid].children.push_back({child, lit.positive});
        // loop detection against the ancestors on the current path
        int anc = -1;
        for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i)
          if (path[i].agent == lit.agent && path[i].formula == lit.inner) {
            anc = i;
            break;
          }
        if (anc >= 0) {
          bool all_true = lit.positive;
          for (size_t i = anc + 1; i < path.size() && all_true; ++i)
            all_true = path[i].incoming_true_edge;
          auto& cv = g.queries[child];
          cv.loop = true;
          cv.loop_over_negation = !all_true;
          cv.label = all_true ? Truth::False : Truth::Unknown;
          result_.trace.push_back(TraceEvent{agent, lit.agent,
                                             g.queries[child].text, *cv.label,
                                             lit.agent != agent});
        } else {
          path.push_back(PathEntry{lit.agent, lit.inner, lit.positive});
          visit(child, path);
          path.pop_back();
          result_.trace.push_back(TraceEvent{agent, lit.agent,
                                             g.queries[child].text,
                                             *g.queries[child].label,
                                             lit.agent != agent});
        }
        Truth expected = lit.positive ? Truth::True : Truth::False;
        if (*g.queries[child].label != expected) satisfied = false;
      }
      if (satisfied) g.queries[vid].label = Truth::True;
    }

    if (!g.queries[vid].label) {
      // every set vertex refuted -> false; otherwise undecided
      bool all_refuted = true;
      for (int sid : g.queries[vid].sets) {
        bool refuted = false;
        for (auto [child, t_edge] : g.sets[sid].children) {
          Truth opposite = t_edge ? Truth::False : Truth::True;
          if (*g.queries[child].label == opposite) {
            refuted = true;
            break;
          }
        }
        if (!refuted) {
          all_refuted = false;
          break;
        }
      }
      g.queries[vid].label = all_refuted ? Truth::False : Truth::Unknown;
    }
  }

  std::vector<std::unique_ptr<SupportOracle>>& agents_;
  const GroundTheory& gt_;
  Config cfg_;
  DecideResult result_;
};

}  // namespace

std::vector<std::unique_ptr<SupportOracle>> local_support_oracles(
    const GroundTheory& gt, const Config& cfg) {
  std::vector<std::unique_ptr<SupportOracle>> out;
  for (int a = 0; a < gt.agent_count(); ++a)
    out.push_back(std::make_unique<LocalSupportOracle>(gt, a, cfg));
  return out;
}

DecideResult decide_with(std::vector<std::unique_ptr<SupportOracle>>& agents,
                         const GroundTheory& gt, int agent, const Gf* query,
                         const Config& cfg) {
  Session s(agents, gt, cfg);
  return s.run(agent, query);
}

DecideResult decide(const GroundTheory& gt, int agent, const Gf* query,
                    const Config& cfg) {
  auto agents = local_support_oracles(gt, cfg);
  return decide_with(agents, gt, agent, query, cfg);
}

std::string QueryGraph::to_dot(const std::vector<std::string>& agent_names) const {
  std::ostringstream os;
  os << "digraph query {\n  rankdir=TB;\n";
  for (size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    os << "  q" << i << " [shape=box,label=\"<" << agent_names[q.agent] << ":"
       << q.text << ">";
    if (q.label) os << " = " << truth_char(*q.label);
    if (q.loop) os << (q.loop_over_negation ? "\\nloop (over negation)" : "\\nloop");
    os << "\"];\n";
  }
  for (size_t i = 0; i < sets.size(); ++i) {
    const auto& s = sets[i];
    os << "  s" << i << " [shape=ellipse,label=\"{";
    for (size_t j = 0; j < s.literals.size(); ++j) {
      const auto& l = s.literals[j];
      if (j) os << ", ";
      if (!l.positive) os << "~";
      os << agent_names[l.agent] << " says " << l.text;
    }
    os << "}\"];\n";
    os << "  q" << s.parent << " -> s" << i << ";\n";
    for (auto [child, t_edge] : s.children)
      os << "  s" << i << " -> q" << child << " [label=\""
         << (t_edge ? "t" : "f") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace daelix
