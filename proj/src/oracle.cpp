#include "hypersum/oracle.hpp"

#include <omp.h>

#include <bit>
#include <cstdint>
#include <limits>
#include <string>

namespace hypersum {

namespace {

constexpr int kChunkBits = 12;

void check_cap(int n, const Limits& limits) {
  if (n > limits.oracle_max_vars) {
    throw CapExceeded("oracle limited to n <= " + std::to_string(limits.oracle_max_vars) + ", got n = " +
                      std::to_string(n));
  }
  if (n < 0 || n > kMaxVariables) throw InputError("variable count out of range");
}

// Each gate's linear form scaled by a common denominator so that points
// can be evaluated with machine integers. Falls back to the exact rational
// evaluation when the scaled form does not fit in 62 bits.
struct ScaledForm {
  bool fits = false;
  std::vector<std::int64_t> weights;
  std::int64_t offset = 0;  // threshold, target or bias, scaled
  Integer denominator = 1;

  ScaledForm(const std::vector<Rational>& w, const Rational& c) {
    auto all = w;
    all.push_back(c);
    denominator = common_denominator(all);
    Integer bound = 0;
    std::vector<Integer> scaled;
    for (const auto& v : all) {
      Rational s = v * denominator;
      scaled.push_back(s.get_num());
      bound += abs(s.get_num());
    }
    if (bound >= Integer(std::numeric_limits<std::int64_t>::max() / 2)) return;
    fits = true;
    for (std::size_t i = 0; i + 1 < scaled.size(); ++i) weights.push_back(scaled[i].get_si());
    offset = scaled.back().get_si();
  }

  std::int64_t dot(std::uint64_t bits) const {
    std::int64_t s = 0;
    for (; bits != 0; bits &= bits - 1) s += weights[static_cast<std::size_t>(std::countr_zero(bits))];
    return s;
  }
};

// Integer numerator of a gate value at a point; the gate value is
// numerator / denominator(gate).
class PointEvaluator {
 public:
  PointEvaluator(const GateList& gates, int n) : gates_(gates), n_(n) {
    std::visit(
        [&](const auto& list) {
          using T = typename std::decay_t<decltype(list)>::value_type;
          for (const auto& g : list) {
            if constexpr (std::is_same_v<T, ThresholdGate>) {
              forms_.emplace_back(g.weights(), g.threshold());
            } else if constexpr (std::is_same_v<T, ExactThresholdGate>) {
              forms_.emplace_back(g.weights(), g.target());
            } else if constexpr (std::is_same_v<T, ReluGate>) {
              forms_.emplace_back(g.weights(), g.bias());
            }
          }
        },
        gates);
  }

  Family family() const { return family_of(gates_); }
  std::size_t size() const { return size_of(gates_); }

  /// Exact gate value at x.
  Rational value(std::size_t i, std::uint64_t bits) const {
    if (family() == Family::fp || !forms_[i].fits) return eval_gate(gates_, i, Assignment(bits, n_));
    const auto& f = forms_[i];
    const std::int64_t s = f.dot(bits);
    switch (family()) {
      case Family::thr: return s >= f.offset ? 1 : 0;
      case Family::ethr: return s == f.offset ? 1 : 0;
      default: {
        const std::int64_t v = s + f.offset;
        if (v <= 0) return 0;
        Rational r(Integer(static_cast<long>(v)), f.denominator);
        r.canonicalize();
        return r;
      }
    }
  }

  /// 0/1 value for THR/ETHR gates.
  bool fires(std::size_t i, std::uint64_t bits) const {
    const auto& f = forms_[i];
    if (!f.fits) return value(i, bits) != 0;
    const std::int64_t s = f.dot(bits);
    return family() == Family::thr ? s >= f.offset : s == f.offset;
  }

 private:
  const GateList& gates_;
  int n_;
  std::vector<ScaledForm> forms_;
};

template <class Value, class Accumulate>
std::vector<Value> for_each_chunk(int n, Accumulate&& accumulate) {
  const std::uint64_t total = std::uint64_t{1} << n;
  const int chunk_bits = std::min(n, kChunkBits);
  const std::uint64_t chunk = std::uint64_t{1} << chunk_bits;
  const auto chunks = static_cast<std::int64_t>(total / chunk);
  std::vector<Value> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
    partial[static_cast<std::size_t>(c)] = accumulate(begin, begin + chunk);
  }
  return partial;
}

template <class Value>
Value sum_all(const std::vector<Value>& parts) {
  Value total = 0;
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace

Rational oracle_sumprod(const GateList& gates, int n, const Limits& limits) {
  check_cap(n, limits);
  for (std::size_t i = 0; i < size_of(gates); ++i) {
    std::visit([&](const auto& list) {
      if (list[i].n() != n) throw InputError("gate " + std::to_string(i) + " does not have n variables");
    }, gates);
  }
  const PointEvaluator eval(gates, n);
  const std::size_t k = eval.size();

  if (eval.family() == Family::thr || eval.family() == Family::ethr) {
    auto parts = for_each_chunk<std::uint64_t>(n, [&](std::uint64_t lo, std::uint64_t hi) {
      std::uint64_t hits = 0;
      for (std::uint64_t x = lo; x < hi; ++x) {
        bool all = true;
        for (std::size_t i = 0; i < k && all; ++i) all = eval.fires(i, x);
        hits += all ? 1 : 0;
      }
      return hits;
    });
    return Rational(Integer(std::to_string(sum_all(parts))));
  }

  auto parts = for_each_chunk<Rational>(n, [&](std::uint64_t lo, std::uint64_t hi) {
    Rational acc = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      Rational prod = 1;
      for (std::size_t i = 0; i < k && prod != 0; ++i) prod *= eval.value(i, x);
      acc += prod;
    }
    return acc;
  });
  return sum_all(parts);
}

namespace {

Rational lincomb_value(const LinComb& c, const PointEvaluator& eval, std::uint64_t x) {
  Rational f = 0;
  for (std::size_t i = 0; i < c.sparsity(); ++i) {
    if (c.coefficients[i] == 0) continue;
    f += c.coefficients[i] * eval.value(i, x);
  }
  return f;
}

}  // namespace

OracleBooleanCheck oracle_check_boolean(const LinComb& c, const Limits& limits) {
  c.validate();
  check_cap(c.n, limits);
  const PointEvaluator eval(c.gates, c.n);
  const std::uint64_t total = std::uint64_t{1} << c.n;
  for (std::uint64_t x = 0; x < total; ++x) {
    const Rational f = lincomb_value(c, eval, x);
    if (f != 0 && f != 1) return {false, Assignment(x, c.n)};
  }
  return {};
}

Rational oracle_boolean_deviation(const LinComb& c, const Limits& limits) {
  c.validate();
  check_cap(c.n, limits);
  const PointEvaluator eval(c.gates, c.n);
  auto parts = for_each_chunk<Rational>(c.n, [&](std::uint64_t lo, std::uint64_t hi) {
    Rational acc = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const Rational f = lincomb_value(c, eval, x);
      const Rational g = f * (1 - f);
      acc += g * g;
    }
    return acc;
  });
  return sum_all(parts);
}

Rational oracle_squared_distance(const LinComb& c1, const LinComb& c2, const Limits& limits) {
  c1.validate();
  c2.validate();
  if (c1.n != c2.n) throw InputError("combinations have different variable counts");
  check_cap(c1.n, limits);
  const PointEvaluator e1(c1.gates, c1.n);
  const PointEvaluator e2(c2.gates, c2.n);
  auto parts = for_each_chunk<Rational>(c1.n, [&](std::uint64_t lo, std::uint64_t hi) {
    Rational acc = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const Rational d = lincomb_value(c1, e1, x) - lincomb_value(c2, e2, x);
      acc += d * d;
    }
    return acc;
  });
  return sum_all(parts);
}

Integer oracle_count_sat(const LinComb& c, const Limits& limits) {
  c.validate();
  check_cap(c.n, limits);
  const PointEvaluator eval(c.gates, c.n);
  const std::uint64_t total = std::uint64_t{1} << c.n;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < total; ++x) {
    const Rational f = lincomb_value(c, eval, x);
    if (f == 1) {
      ++count;
    } else if (f != 0) {
      throw InputError("combination is not Boolean-valued: f(" + Assignment(x, c.n).to_string() +
                       ") = " + format_rational(f));
    }
  }
  return Integer(std::to_string(count));
}

Integer oracle_count_fp_system(const std::vector<FpPolynomial>& polys,
                               const std::vector<std::uint32_t>& targets, const Limits& limits) {
  if (polys.size() != targets.size()) throw InputError("need one target per polynomial");
  if (polys.empty()) throw InputError("empty polynomial system");
  const int n = polys.front().n();
  const std::uint32_t p = polys.front().p();
  for (const auto& q : polys) {
    if (q.p() != p) throw InputError("polynomials use different primes");
    if (q.n() != n) throw InputError("polynomials have different variable counts");
  }
  check_cap(n, limits);
  auto parts = for_each_chunk<std::uint64_t>(n, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t hits = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const Assignment a(x, n);
      bool all = true;
      for (std::size_t i = 0; i < polys.size() && all; ++i) all = eval_fp(polys[i], a) == targets[i] % p;
      hits += all ? 1 : 0;
    }
    return hits;
  });
  return Integer(std::to_string(sum_all(parts)));
}

}  // namespace hypersum
