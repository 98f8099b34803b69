#pragma once

// Seeded random instances for tests, the acceptance suite and `bench`.

#include <cstdint>
#include <random>
#include <vector>

#include "hypersum/gates.hpp"

namespace hypersum {

/// mt19937_64 with a portable bounded draw, so a seed reproduces the same
/// instance with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Seed for trial `trial` of a run with base seed `seed` at size n.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial);

/// Integer weights in [-max_weight, max_weight]; threshold uniform between
/// the smallest and largest achievable weighted sum.
ThresholdGate random_thr_gate(Rng& rng, int n, int max_weight);
ExactThresholdGate random_ethr_gate(Rng& rng, int n, int max_weight);

/// Weights and bias j/q with q in [1, max_den] and |j| <= max_num.
ReluGate random_relu_gate(Rng& rng, int n, int max_num, int max_den);

/// Up to `terms` random monomials of degree <= d.
FpPolynomial random_fp_poly(Rng& rng, int n, std::uint32_t p, int d, int terms);

/// Random gate list of the given family (p and d only used for fp).
GateList random_gates(Rng& rng, Family family, int n, int k, std::uint32_t p = 3, int d = 2);

/// Boolean-valued: sum of [<w,x> = v] over distinct achievable values v for
/// one random integer weight vector.
LinComb random_disjoint_ethr_sum(Rng& rng, int n, int max_weight);

/// Boolean-valued: OR of r random literal conjunctions written by
/// inclusion-exclusion, each conjunction a threshold gate.
LinComb random_inclusion_exclusion(Rng& rng, int n, int r);

/// Same combination with one coefficient shifted by `delta`, chosen among
/// gates that are nonzero somewhere when there are any.
LinComb perturb(const LinComb& c, Rng& rng, const Rational& delta);

}  // namespace hypersum
