#pragma once

// Decisions about a sparse linear combination f = sum_i alpha_i g_i that
// only need Sum-Products of up to four gates.

#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"
#include "hypersum/mitm.hpp"

namespace hypersum {

struct BooleanCheck {
  bool boolean = true;
  Rational deviation = 0;  // sum_x f(x)^2 (1 - f(x))^2; zero iff Boolean-valued
};

/// Expands f^2 - 2 f^3 + f^4 over the gates and sums every monomial with one
/// Sum-Product call. Products of equal gates are merged first; for the 0/1
/// families a repeated gate is also dropped (g * g = g).
BooleanCheck check_boolean(const LinComb& c, const Limits& limits = {}, MitmStats* stats = nullptr);

struct CountSatOptions {
  /// Skip the Boolean-valuedness pre-check.
  bool unchecked = false;
};

/// Thrown by count_sat when the input is not Boolean-valued.
class NotBooleanValued : public InputError {
 public:
  using InputError::InputError;
};

/// |{x : f(x) = 1}| = sum_i alpha_i * sum_x g_i(x) for Boolean-valued f.
Integer count_sat(const LinComb& c, const CountSatOptions& options = {}, const Limits& limits = {},
                  MitmStats* stats = nullptr);

struct EqualityCheck {
  bool equal = true;
  Rational deviation = 0;  // sum_x (f1(x) - f2(x))^2
};

EqualityCheck check_equal(const LinComb& c1, const LinComb& c2, const Limits& limits = {},
                          MitmStats* stats = nullptr);

/// Number of distinct Sum-Product calls check_boolean issues for `c`.
std::size_t boolean_check_calls(const LinComb& c);

}  // namespace hypersum
