#pragma once

// Brute-force 2^n reference computations. Everything here walks the full
// hypercube point by point and is the ground truth for the fast kernels.

#include <optional>
#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"

namespace hypersum {

/// sum_x prod_i g_i(x) over {0,1}^n. An empty list gives 2^n.
Rational oracle_sumprod(const GateList& gates, int n, const Limits& limits = {});

struct OracleBooleanCheck {
  bool boolean = true;
  std::optional<Assignment> witness;  // first point with f(x) not in {0,1}
};

OracleBooleanCheck oracle_check_boolean(const LinComb& c, const Limits& limits = {});

/// sum_x f(x)^2 (1 - f(x))^2, the deviation reported by check_boolean.
Rational oracle_boolean_deviation(const LinComb& c, const Limits& limits = {});

/// sum_x (f1(x) - f2(x))^2
Rational oracle_squared_distance(const LinComb& c1, const LinComb& c2, const Limits& limits = {});

/// |{x : f(x) = 1}|; throws InputError on a non-Boolean value.
Integer oracle_count_sat(const LinComb& c, const Limits& limits = {});

/// |{x : polys[i](x) = targets[i] for all i}|
Integer oracle_count_fp_system(const std::vector<FpPolynomial>& polys,
                               const std::vector<std::uint32_t>& targets, const Limits& limits = {});

}  // namespace hypersum
