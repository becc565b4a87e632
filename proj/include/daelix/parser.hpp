// Text format for distributed theories.
//
//   agents M,D.
//   domain { a, b }.                        (optional; agents auto-included)
//   pred c/0.                               (subjective by default)
//   pred Edge/2 objective = { (a,b) (b,a) }.
//   func f/1 objective = { (a)->b (b)->b }.
//   theory D { K[M] c => c. }
//
// Connectives: ~ & | => <=> forall x: exists x: K[t] true false, plus
// infix equality between terms.  Declarations must precede their use.

#ifndef DAELIX_PARSER_HPP
#define DAELIX_PARSER_HPP

#include <string>

#include "daelix/theory.hpp"

namespace daelix {

// Parses and validates a theory file.  The result is desugared and closed;
// parsing is total over valid inputs and loss-free modulo desugaring.
DistributedTheory parse_theory(const std::string& source);

// Parses a single sentence in the context of an existing theory's
// vocabulary, desugars and validates it.
FormulaPtr parse_sentence(const std::string& source,
                          const DistributedTheory& context);

}  // namespace daelix

#endif
