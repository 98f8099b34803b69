#include "hypersum/transforms.hpp"

#include <string>

namespace hypersum {

namespace {

Integer require_integer(const Rational& value, const char* what) {
  if (!is_integer(value)) throw InputError(std::string(what) + " must be an integer; normalize the gate first");
  return value.get_num();
}

// S_i + |t_i| bounds |<w_i, x> - t_i| on the cube.
Integer deviation_bound(const ExactThresholdGate& g) {
  Integer bound = abs(require_integer(g.target(), "target"));
  for (const auto& w : integer_weights(g.weights())) bound += abs(w);
  return bound;
}

// Digits d_i with |d_i| <= (B - 1) / 2 sum to zero in base B only if all vanish.
Integer minimum_base(const std::vector<ExactThresholdGate>& gates) {
  Integer widest = 0;
  for (const auto& g : gates) {
    const Integer bound = deviation_bound(g);
    if (bound > widest) widest = bound;
  }
  return 2 * widest + 1;
}

}  // namespace

TargetRange thr_target_range(const ThresholdGate& g) {
  const auto w = integer_weights(g.weights());
  const Integer t = require_integer(g.threshold(), "threshold");
  Integer lowest = 0;
  Integer highest = 0;
  for (const auto& v : w) {
    if (v < 0) lowest += v;
    if (v > 0) highest += v;
  }
  return {t > lowest ? t : lowest, highest};
}

std::vector<ExactThresholdGate> thr_to_ethrs(const ThresholdGate& g, const Limits& limits) {
  const TargetRange range = thr_target_range(g);
  if (range.size() > Integer(std::to_string(limits.max_decomposition_terms))) {
    throw CapExceeded("threshold decomposition needs " + range.size().get_str() + " exact thresholds, cap is " +
                      std::to_string(limits.max_decomposition_terms));
  }
  std::vector<ExactThresholdGate> out;
  for (Integer v = range.lo; v <= range.hi; ++v) out.emplace_back(g.weights(), Rational(v));
  return out;
}

Integer collapse_base(const std::vector<ExactThresholdGate>& gates) {
  Integer total = 0;
  for (const auto& g : gates) total += deviation_bound(g);
  return 2 * total + 1;
}

ExactThresholdGate collapse_ethr_conjunction(const std::vector<ExactThresholdGate>& gates) {
  if (gates.empty()) throw InputError("cannot collapse an empty conjunction");
  return collapse_ethr_conjunction(gates, collapse_base(gates));
}

ExactThresholdGate collapse_ethr_conjunction(const std::vector<ExactThresholdGate>& gates, const Integer& base) {
  if (gates.empty()) throw InputError("cannot collapse an empty conjunction");
  if (base < minimum_base(gates)) throw InputError("collapse base too small to prevent interference");
  const int n = gates.front().n();
  std::vector<Integer> weights(static_cast<std::size_t>(n), Integer(0));
  Integer target = 0;
  Integer place = 1;
  for (const auto& g : gates) {
    if (g.n() != n) throw InputError("gates in a conjunction must share n");
    const auto w = integer_weights(g.weights());
    for (std::size_t j = 0; j < w.size(); ++j) weights[j] += place * w[j];
    target += place * require_integer(g.target(), "target");
    place *= base;
  }
  std::vector<Rational> rw(weights.begin(), weights.end());
  return {std::move(rw), Rational(target)};
}

std::pair<ReluGate, ReluGate> thr_to_relu_pair(const ThresholdGate& g) {
  integer_weights(g.weights());
  const Integer t = require_integer(g.threshold(), "threshold");
  return {ReluGate(g.weights(), Rational(1 - t)), ReluGate(g.weights(), Rational(-t))};
}

}  // namespace hypersum
