#include "daelix/theory.hpp"

#include <algorithm>

namespace daelix {

void Vocabulary::declare_pred(const std::string& name, int arity,
                              bool objective) {
  if (declared(name))
    throw ValidationError("symbol '" + name + "' declared twice");
  if (arity < 0) throw ValidationError("negative arity for '" + name + "'");
  pred_index_[name] = static_cast<int>(preds_.size());
  preds_.push_back(PredSig{name, arity, objective});
}

void Vocabulary::declare_func(const std::string& name, int arity) {
  if (declared(name))
    throw ValidationError("symbol '" + name + "' declared twice");
  if (arity < 0) throw ValidationError("negative arity for '" + name + "'");
  func_index_[name] = static_cast<int>(funcs_.size());
  funcs_.push_back(FuncSig{name, arity});
}

const PredSig* Vocabulary::find_pred(const std::string& name) const {
  auto it = pred_index_.find(name);
  return it == pred_index_.end() ? nullptr : &preds_[it->second];
}

const FuncSig* Vocabulary::find_func(const std::string& name) const {
  auto it = func_index_.find(name);
  return it == func_index_.end() ? nullptr : &funcs_[it->second];
}

bool Vocabulary::declared(const std::string& name) const {
  return pred_index_.count(name) || func_index_.count(name);
}

int ObjectiveStructure::add_element(const std::string& name) {
  auto it = elem_index_.find(name);
  if (it != elem_index_.end()) return it->second;
  int id = static_cast<int>(domain_.size());
  domain_.push_back(name);
  elem_index_[name] = id;
  return id;
}

int ObjectiveStructure::element(const std::string& name) const {
  auto it = elem_index_.find(name);
  if (it == elem_index_.end())
    throw ValidationError("unknown domain element '" + name + "'");
  return it->second;
}

bool ObjectiveStructure::has_element(const std::string& name) const {
  return elem_index_.count(name) != 0;
}

void ObjectiveStructure::set_pred(const std::string& name,
                                  std::set<std::vector<int>> tuples) {
  pred_ext_[name] = std::move(tuples);
}

void ObjectiveStructure::add_pred_tuple(const std::string& name,
                                        std::vector<int> tuple) {
  pred_ext_[name].insert(std::move(tuple));
}

bool ObjectiveStructure::pred_holds(const std::string& name,
                                    const std::vector<int>& tuple) const {
  auto it = pred_ext_.find(name);
  if (it == pred_ext_.end()) return false;
  return it->second.count(tuple) != 0;
}

bool ObjectiveStructure::pred_interpreted(const std::string& name) const {
  return pred_ext_.count(name) != 0;
}

void ObjectiveStructure::set_func_entry(const std::string& name,
                                        std::vector<int> tuple, int value) {
  func_graph_[name][std::move(tuple)] = value;
}

int ObjectiveStructure::func_value(const std::string& name,
                                   const std::vector<int>& tuple) const {
  auto it = func_graph_.find(name);
  if (it != func_graph_.end()) {
    auto jt = it->second.find(tuple);
    if (jt != it->second.end()) return jt->second;
  }
  std::string key = name;
  if (!tuple.empty()) {
    key += "(";
    for (size_t i = 0; i < tuple.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(tuple[i]);
    }
    key += ")";
  }
  throw ValidationError("objective symbol uninterpreted by I_o: " + key);
}

int ObjectiveStructure::eval_term(
    const Term& t, const std::map<std::string, int>& assignment) const {
  if (t.is_variable) {
    auto it = assignment.find(t.head);
    if (it == assignment.end())
      throw ValidationError("unbound variable '" + t.head + "'");
    return it->second;
  }
  // Domain elements name themselves.
  if (t.args.empty() && has_element(t.head)) return element(t.head);
  std::vector<int> argv;
  argv.reserve(t.args.size());
  for (const auto& a : t.args) argv.push_back(eval_term(a, assignment));
  return func_value(t.head, argv);
}

int DistributedTheory::agent_index(const std::string& name) const {
  auto it = std::find(agents.begin(), agents.end(), name);
  return it == agents.end() ? -1 : static_cast<int>(it - agents.begin());
}

void DistributedTheory::validate() const {
  if (agents.empty()) throw ValidationError("no agents declared");
  if (sentences.size() != agents.size())
    throw ValidationError("theory map does not cover the agent set");
  for (const auto& a : agents)
    if (!objective.has_element(a))
      throw ValidationError("agent '" + a + "' is not a domain element");
  // Apred must denote exactly the agent set.
  std::set<std::vector<int>> expect;
  for (const auto& a : agents) expect.insert({objective.element(a)});
  for (int e = 0; e < objective.size(); ++e) {
    bool is_agent = expect.count({e}) != 0;
    if (objective.pred_holds(builtin::kAgentPred, {e}) != is_agent)
      throw ValidationError("Apred does not denote the agent set");
  }
  for (const auto& per_agent : sentences)
    for (const auto& s : per_agent) {
      if (!is_desugared(s))
        throw ValidationError("sentence not desugared: " + to_string(s));
      if (!free_variables(s).empty())
        throw ValidationError("free variable in sentence: " + to_string(s));
      check_indexed(s);
    }
}

// Distributed theories must index every modal operator; the unindexed K is
// reserved for the single-knower (AEL) side.
static void check_indexed_impl(const Formula& f) {
  if (f.kind == FormulaKind::Knows && !f.index)
    throw ValidationError("unindexed K in a distributed theory: " +
                          to_string(f));
  if (f.lhs) check_indexed_impl(*f.lhs);
  if (f.rhs) check_indexed_impl(*f.rhs);
}

void check_indexed(const FormulaPtr& f) { check_indexed_impl(*f); }

}  // namespace daelix
