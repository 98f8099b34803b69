#include "hypersum/instances.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "hypersum/sumprod.hpp"

namespace hypersum {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) std::swap(lo, hi);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
  // splitmix64 over the packed fields
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + (n << 32) + trial;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

std::vector<Rational> int_weights(Rng& rng, int n, int max_weight, std::int64_t& lowest, std::int64_t& highest) {
  std::vector<Rational> w;
  lowest = highest = 0;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.uniform(-max_weight, max_weight);
    w.emplace_back(static_cast<long>(v));
    (v < 0 ? lowest : highest) += v;
  }
  return w;
}

Rational random_fraction(Rng& rng, int max_num, int max_den) {
  Rational r(static_cast<long>(rng.uniform(-max_num, max_num)), static_cast<unsigned long>(rng.uniform(1, max_den)));
  r.canonicalize();
  return r;
}

}  // namespace

ThresholdGate random_thr_gate(Rng& rng, int n, int max_weight) {
  std::int64_t lowest, highest;
  auto w = int_weights(rng, n, max_weight, lowest, highest);
  return {std::move(w), Rational(static_cast<long>(rng.uniform(lowest, highest)))};
}

ExactThresholdGate random_ethr_gate(Rng& rng, int n, int max_weight) {
  std::int64_t lowest, highest;
  auto w = int_weights(rng, n, max_weight, lowest, highest);
  return {std::move(w), Rational(static_cast<long>(rng.uniform(lowest, highest)))};
}

ReluGate random_relu_gate(Rng& rng, int n, int max_num, int max_den) {
  std::vector<Rational> w;
  for (int i = 0; i < n; ++i) w.push_back(random_fraction(rng, max_num, max_den));
  return {std::move(w), random_fraction(rng, max_num * 2, max_den)};
}

FpPolynomial random_fp_poly(Rng& rng, int n, std::uint32_t p, int d, int terms) {
  FpPolynomial q(p, n, d);
  for (int t = 0; t < terms; ++t) {
    const int degree = static_cast<int>(rng.uniform(0, std::min(d, n)));
    std::uint64_t mask = 0;
    while (std::popcount(mask) < degree) mask |= std::uint64_t{1} << rng.uniform(0, n - 1);
    q.add_term(mask, rng.uniform(1, p - 1));
  }
  return q;
}

GateList random_gates(Rng& rng, Family family, int n, int k, std::uint32_t p, int d) {
  switch (family) {
    case Family::thr: {
      std::vector<ThresholdGate> g;
      for (int i = 0; i < k; ++i) g.push_back(random_thr_gate(rng, n, 8));
      return g;
    }
    case Family::ethr: {
      std::vector<ExactThresholdGate> g;
      for (int i = 0; i < k; ++i) g.push_back(random_ethr_gate(rng, n, 8));
      return g;
    }
    case Family::relu: {
      std::vector<ReluGate> g;
      for (int i = 0; i < k; ++i) g.push_back(random_relu_gate(rng, n, 4, 4));
      return g;
    }
    case Family::fp: {
      std::vector<FpPolynomial> g;
      for (int i = 0; i < k; ++i) g.push_back(random_fp_poly(rng, n, p, d, static_cast<int>(rng.uniform(1, n + 2))));
      return g;
    }
  }
  throw InputError("unknown family");
}

LinComb random_disjoint_ethr_sum(Rng& rng, int n, int max_weight) {
  std::int64_t lowest, highest;
  const auto w = int_weights(rng, n, max_weight, lowest, highest);
  std::vector<ExactThresholdGate> gates;
  std::set<Rational> used;
  const int count = static_cast<int>(rng.uniform(1, 5));
  for (int i = 0; i < count; ++i) {
    // the weighted sum of a random point, so every gate fires somewhere
    Rational v = 0;
    for (int j = 0; j < n; ++j) {
      if (rng.coin()) v += w[static_cast<std::size_t>(j)];
    }
    if (!used.insert(v).second) continue;
    gates.emplace_back(w, v);
  }
  LinComb c{n, std::vector<Rational>(gates.size(), Rational(1)), std::move(gates)};
  return c;
}

LinComb random_inclusion_exclusion(Rng& rng, int n, int r) {
  struct Literals {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
  };
  std::vector<Literals> terms(static_cast<std::size_t>(r));
  for (auto& t : terms) {
    const int width = static_cast<int>(rng.uniform(1, std::min(n, 3)));
    for (int j = 0; j < width; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << rng.uniform(0, n - 1);
      if ((t.positive | t.negative) & bit) continue;  // keep each term satisfiable
      (rng.coin() ? t.positive : t.negative) |= bit;
    }
  }
  std::vector<ThresholdGate> gates;
  std::vector<Rational> coefficients;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << r); ++subset) {
    Literals u;
    for (int i = 0; i < r; ++i) {
      if ((subset >> i) & 1u) {
        u.positive |= terms[static_cast<std::size_t>(i)].positive;
        u.negative |= terms[static_cast<std::size_t>(i)].negative;
      }
    }
    std::vector<Rational> w(static_cast<std::size_t>(n), Rational(0));
    Rational threshold;
    if ((u.positive & u.negative) != 0) {
      threshold = 1;  // contradictory conjunction: constant 0
    } else {
      for (int i = 0; i < n; ++i) {
        if ((u.positive >> i) & 1u) w[static_cast<std::size_t>(i)] = 1;
        if ((u.negative >> i) & 1u) w[static_cast<std::size_t>(i)] = -1;
      }
      threshold = std::popcount(u.positive);
    }
    gates.emplace_back(std::move(w), threshold);
    coefficients.emplace_back(std::popcount(subset) % 2 == 1 ? 1 : -1);
  }
  return {n, std::move(coefficients), std::move(gates)};
}

LinComb perturb(const LinComb& c, Rng& rng, const Rational& delta) {
  LinComb out = c;
  if (out.sparsity() == 0) return out;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < out.sparsity(); ++i) {
    // every family is non-negative, so a gate fires somewhere iff its sum is positive
    if (sumprod(select(out.gates, {i}), out.n) != 0) live.push_back(i);
  }
  const auto& pool = live.empty() ? std::vector<std::size_t>{0} : live;
  const auto pick = pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
  out.coefficients[pick] += delta;
  return out;
}

}  // namespace hypersum
