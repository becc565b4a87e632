#ifndef DAELIX_ERRORS_HPP
#define DAELIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace daelix {

// Lexical or grammatical error; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Well-formedness violations: undeclared symbols, arity mismatches, free
// variables in sentences, subjective function symbols, bad scenarios.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg)
      : std::runtime_error("validation error: " + msg) {}
};

// A configurable resource cap was hit (atom count, enumeration size, ...).
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& msg)
      : std::runtime_error("cap exceeded: " + msg) {}
};

// A well-founded-induction replay step was not a legal refinement.
class ReplayError : public std::runtime_error {
 public:
  explicit ReplayError(const std::string& msg)
      : std::runtime_error("replay error: " + msg) {}
};

}  // namespace daelix

#endif
