// Vocabulary, the shared objective structure, and distributed theories.

#ifndef DAELIX_THEORY_HPP
#define DAELIX_THEORY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "daelix/errors.hpp"
#include "daelix/formula.hpp"

namespace daelix {

struct PredSig {
  std::string name;
  int arity = 0;
  bool objective = false;
};

struct FuncSig {
  std::string name;
  int arity = 0;  // functions are objective only; constants have arity 0
};

class Vocabulary {
 public:
  void declare_pred(const std::string& name, int arity, bool objective);
  void declare_func(const std::string& name, int arity);

  const PredSig* find_pred(const std::string& name) const;
  const FuncSig* find_func(const std::string& name) const;
  bool declared(const std::string& name) const;

  const std::vector<PredSig>& preds() const { return preds_; }
  const std::vector<FuncSig>& funcs() const { return funcs_; }

 private:
  std::vector<PredSig> preds_;
  std::vector<FuncSig> funcs_;
  std::map<std::string, int> pred_index_;
  std::map<std::string, int> func_index_;
};

// Total interpretation of the objective symbols over the finite domain.
// Elements are kept in declaration order; all downstream canonical orders
// compare element indices, not names.
class ObjectiveStructure {
 public:
  int add_element(const std::string& name);  // idempotent
  int element(const std::string& name) const;
  bool has_element(const std::string& name) const;
  int size() const { return static_cast<int>(domain_.size()); }
  const std::vector<std::string>& domain() const { return domain_; }
  const std::string& name_of(int e) const { return domain_.at(e); }

  void set_pred(const std::string& name, std::set<std::vector<int>> tuples);
  void add_pred_tuple(const std::string& name, std::vector<int> tuple);
  bool pred_holds(const std::string& name, const std::vector<int>& tuple) const;
  bool pred_interpreted(const std::string& name) const;

  void set_func_entry(const std::string& name, std::vector<int> tuple, int value);
  // Throws ValidationError if the graph has no entry for the tuple.
  int func_value(const std::string& name, const std::vector<int>& tuple) const;

  // Evaluates a ground-able term; variables are looked up in the assignment.
  int eval_term(const Term& t,
                const std::map<std::string, int>& assignment) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, int> elem_index_;
  std::map<std::string, std::set<std::vector<int>>> pred_ext_;
  std::map<std::string, std::map<std::vector<int>, int>> func_graph_;
};

// An agent-indexed family of sentence sets over a shared vocabulary and
// objective structure.  Sentences are stored desugared.  Immutable once
// built; safe to share between threads.
struct DistributedTheory {
  Vocabulary vocab;
  ObjectiveStructure objective;
  std::vector<std::string> agents;                 // declaration order
  std::vector<std::vector<FormulaPtr>> sentences;  // per agent

  int agent_index(const std::string& name) const;

  // Checks the structural invariants: agents are domain elements, Apred's
  // extension equals the agent set, every sentence is closed and desugared.
  void validate() const;
};

// Throws unless every modal operator in the sentence carries an index term.
void check_indexed(const FormulaPtr& f);

}  // namespace daelix

#endif
