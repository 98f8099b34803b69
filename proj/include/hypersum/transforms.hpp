#pragma once

// Structural gate rewrites used by the Sum-Product kernels.

#include <utility>
#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"

namespace hypersum {

/// Inclusive range of values <w, x> can take that also satisfy <w, x> >= t.
/// Empty when lo > hi.
struct TargetRange {
  Integer lo;
  Integer hi;

  bool empty() const { return lo > hi; }
  Integer size() const { return empty() ? Integer(0) : Integer(hi - lo + 1); }
};

/// Values v with min_x <w,x> <= v <= max_x <w,x> and v >= threshold, for
/// an integer-weight threshold gate.
TargetRange thr_target_range(const ThresholdGate& g);

/// Writes [<w,x> >= t] as the disjoint sum over v of [<w,x> = v]. The gate
/// must have integer weights; at most one returned gate fires at any point.
std::vector<ExactThresholdGate> thr_to_ethrs(const ThresholdGate& g, const Limits& limits = {});

/// 2 * sum_i (sum_j |w_ij| + |t_i|) + 1, the smallest base used to stack
/// integer exact-threshold gates without interference.
Integer collapse_base(const std::vector<ExactThresholdGate>& gates);

/// Single exact-threshold gate firing iff every input gate fires. Weights
/// and targets are stacked in base `collapse_base(gates)`.
ExactThresholdGate collapse_ethr_conjunction(const std::vector<ExactThresholdGate>& gates);

/// Same, with an explicit base; `base` must be at least collapse_base(gates).
ExactThresholdGate collapse_ethr_conjunction(const std::vector<ExactThresholdGate>& gates, const Integer& base);

/// (ReLU(w, 1 - t), ReLU(w, -t)); their difference is [<w,x> >= t] for
/// integer w and t.
std::pair<ReluGate, ReluGate> thr_to_relu_pair(const ThresholdGate& g);

}  // namespace hypersum
