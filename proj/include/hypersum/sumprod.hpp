#pragma once

// Sum-Product over the hypercube for threshold-type gate families:
//   sum_{x in {0,1}^n} prod_i g_i(x).

#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"
#include "hypersum/mitm.hpp"

namespace hypersum {

/// Each gate is split into disjoint exact thresholds; every tuple (one per
/// gate) is collapsed into a single exact threshold whose solutions are
/// counted by split-and-list. Tuple prefixes with no solutions are pruned.
Integer sumprod_thr(const std::vector<ThresholdGate>& gates, int n, const Limits& limits = {},
                    MitmStats* stats = nullptr);

/// Collapses all gates into one exact threshold and counts its solutions.
Integer sumprod_ethr(const std::vector<ExactThresholdGate>& gates, int n, const Limits& limits = {},
                     MitmStats* stats = nullptr);

/// Each factor is written as [<w,x> + a >= 0] * (<w,x> + a); the indicator
/// tuples are handled as in sumprod_thr and each tuple contributes the
/// weighted split-and-list sum of the product of the affine forms.
Rational sumprod_relu(const std::vector<ReluGate>& gates, int n, const Limits& limits = {},
                      MitmStats* stats = nullptr);

/// Family dispatch, including F_p polynomials.
Rational sumprod(const GateList& gates, int n, const Limits& limits = {}, MitmStats* stats = nullptr);

}  // namespace hypersum
