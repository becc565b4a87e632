// Three-valued truth values with Kleene connectives and the two orders
// (truth order f < u < t, precision order u < t and u < f).

#ifndef DAELIX_TRUTH_HPP
#define DAELIX_TRUTH_HPP

#include <cstdint>

namespace daelix {

enum class Truth : uint8_t { False = 0, Unknown = 1, True = 2 };

inline Truth truth_not(Truth a) {
  return static_cast<Truth>(2 - static_cast<uint8_t>(a));
}

// glb in the truth order
inline Truth truth_and(Truth a, Truth b) { return a < b ? a : b; }

// lub in the truth order
inline Truth truth_or(Truth a, Truth b) { return a < b ? b : a; }

inline bool leq_truth(Truth a, Truth b) { return a <= b; }

inline bool leq_precision(Truth a, Truth b) {
  return a == Truth::Unknown || a == b;
}

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

inline char truth_char(Truth a) {
  switch (a) {
    case Truth::True: return 't';
    case Truth::False: return 'f';
    default: return 'u';
  }
}

}  // namespace daelix

#endif
