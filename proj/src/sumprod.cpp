#include "hypersum/sumprod.hpp"

#include <omp.h>

#include <atomic>
#include <exception>
#include <optional>
#include <string>

#include "hypersum/fppoly.hpp"
#include "hypersum/transforms.hpp"

namespace hypersum {

namespace {

struct Indicator {
  std::vector<Integer> weights;
  TargetRange range;
};

void check_arity(int n, std::size_t width) {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (width != static_cast<std::size_t>(n)) {
    throw InputError("gate has " + std::to_string(width) + " variables, expected " + std::to_string(n));
  }
}

Indicator make_indicator(const ThresholdGate& g, const Limits& limits) {
  const auto normalized = normalize_integer(g).gate;
  Indicator ind{integer_weights(normalized.weights()), thr_target_range(normalized)};
  if (ind.range.size() > Integer(std::to_string(limits.max_decomposition_terms))) {
    throw CapExceeded("threshold decomposition needs " + ind.range.size().get_str() +
                      " exact thresholds, cap is " + std::to_string(limits.max_decomposition_terms));
  }
  return ind;
}

// Enumerates tuples (v_0, ..., v_{k-1}) with v_i in indicator i's range.
// A tuple stands for the conjunction of [<w_i, x> = v_i], which is stacked
// into the single exact threshold [sum_i B^i <w_i, x> = sum_i B^i v_i].
// The stacked weight vector depends only on the prefix length, so one
// split-and-list index per prefix length serves every tuple.
class TupleEngine {
 public:
  TupleEngine(std::vector<Indicator> indicators, int n, const Limits& limits, MitmStats* stats)
      : indicators_(std::move(indicators)), limits_(limits) {
    Integer spread = 0;
    for (const auto& ind : indicators_) {
      for (const auto& w : ind.weights) spread += abs(w);
      spread += std::max(abs(ind.range.lo), abs(ind.range.hi));
    }
    // Not smaller than collapse_base() of any tuple drawn from the ranges.
    base_ = 2 * spread + 1;

    std::vector<Integer> stacked(static_cast<std::size_t>(n), Integer(0));
    Integer place = 1;
    for (const auto& ind : indicators_) {
      for (std::size_t j = 0; j < stacked.size(); ++j) stacked[j] += place * ind.weights[j];
      places_.push_back(place);
      prefix_weights_.push_back(stacked);
      prefix_index_.emplace_back(stacked, stats);
      place *= base_;
    }
  }

  bool empty() const {
    for (const auto& ind : indicators_) {
      if (ind.range.empty()) return true;
    }
    return false;
  }

  /// Stacked weights of the full tuple.
  const std::vector<Integer>& full_weights() const { return prefix_weights_.back(); }

  /// Sums leaf(stacked target, solution count) over every tuple whose
  /// conjunction has at least one solution.
  template <class Value, class Leaf>
  Value sum(Leaf&& leaf) {
    if (empty()) return Value(0);
    const auto& first = indicators_.front().range;
    const std::int64_t roots = Integer(first.hi - first.lo + 1).get_si();
    std::vector<Value> partial(static_cast<std::size_t>(roots), Value(0));
    std::atomic<bool> failed{false};
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < roots; ++r) {
      if (failed.load()) continue;
      try {
        const Integer v = first.lo + r;
        partial[static_cast<std::size_t>(r)] = descend<Value>(0, v, leaf);
      } catch (...) {
#pragma omp critical
        {
          if (!error) error = std::current_exception();
        }
        failed = true;
      }
    }
    if (error) std::rethrow_exception(error);
    Value total = 0;
    for (const auto& p : partial) total += p;
    return total;
  }

 private:
  template <class Value, class Leaf>
  Value descend(std::size_t level, const Integer& target, Leaf& leaf) {
    const std::uint64_t solutions = prefix_index_[level].count(target);
    if (solutions == 0) return Value(0);
    if (level + 1 == indicators_.size()) {
      if (++tuples_ > limits_.max_tuples) {
        throw CapExceeded("more than " + std::to_string(limits_.max_tuples) + " exact-threshold tuples");
      }
      return leaf(target, solutions);
    }
    Value total = 0;
    const auto& range = indicators_[level + 1].range;
    const Integer& place = places_[level + 1];
    for (Integer v = range.lo; v <= range.hi; ++v) total += descend<Value>(level + 1, target + place * v, leaf);
    return total;
  }

  std::vector<Indicator> indicators_;
  const Limits& limits_;
  Integer base_;
  std::vector<Integer> places_;
  std::vector<std::vector<Integer>> prefix_weights_;
  std::vector<SubsetSumIndex> prefix_index_;
  std::atomic<std::uint64_t> tuples_{0};
};

}  // namespace

Integer sumprod_thr(const std::vector<ThresholdGate>& gates, int n, const Limits& limits, MitmStats* stats) {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (gates.empty()) return power_of_two(n);
  std::vector<Indicator> indicators;
  for (const auto& g : gates) {
    check_arity(n, static_cast<std::size_t>(g.n()));
    indicators.push_back(make_indicator(g, limits));
  }
  TupleEngine engine(std::move(indicators), n, limits, stats);
  const std::uint64_t total =
      engine.sum<std::uint64_t>([](const Integer&, std::uint64_t solutions) { return solutions; });
  return Integer(std::to_string(total));
}

Integer sumprod_ethr(const std::vector<ExactThresholdGate>& gates, int n, const Limits&, MitmStats* stats) {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (gates.empty()) return power_of_two(n);
  std::vector<ExactThresholdGate> normalized;
  for (const auto& g : gates) {
    check_arity(n, static_cast<std::size_t>(g.n()));
    normalized.push_back(normalize_integer(g).gate);
  }
  const auto collapsed = collapse_ethr_conjunction(normalized);
  return count_subset_sum(integer_weights(collapsed.weights()), collapsed.target().get_num(), stats);
}

Rational sumprod_relu(const std::vector<ReluGate>& gates, int n, const Limits& limits, MitmStats* stats) {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (gates.empty()) return Rational(power_of_two(n));
  std::vector<Indicator> indicators;
  std::vector<AffineForm> affines;
  for (const auto& g : gates) {
    check_arity(n, static_cast<std::size_t>(g.n()));
    // max{0, <w,x> + a} = [<w,x> >= -a] * (<w,x> + a)
    indicators.push_back(make_indicator(ThresholdGate(g.weights(), -g.bias()), limits));
    affines.push_back({g.weights(), g.bias()});
  }
  TupleEngine engine(std::move(indicators), n, limits, stats);
  if (engine.empty()) return 0;
  const AffineSumIndex weighted(engine.full_weights(), affines, stats);
  return engine.sum<Rational>([&](const Integer& target, std::uint64_t) { return weighted.sum(target); });
}

Rational sumprod(const GateList& gates, int n, const Limits& limits, MitmStats* stats) {
  return std::visit(
      [&](const auto& list) -> Rational {
        using T = typename std::decay_t<decltype(list)>::value_type;
        if constexpr (std::is_same_v<T, ThresholdGate>) {
          return Rational(sumprod_thr(list, n, limits, stats));
        } else if constexpr (std::is_same_v<T, ExactThresholdGate>) {
          return Rational(sumprod_ethr(list, n, limits, stats));
        } else if constexpr (std::is_same_v<T, ReluGate>) {
          return sumprod_relu(list, n, limits, stats);
        } else {
          return Rational(sumprod_fp(list, n, limits));
        }
      },
      gates);
}

}  // namespace hypersum
