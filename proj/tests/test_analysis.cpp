#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "hypersum/analysis.hpp"
#include "hypersum/instances.hpp"
#include "hypersum/oracle.hpp"

using namespace hypersum;
using namespace hypersum::test;

namespace {

LinComb complement(const LinComb& c) {
  LinComb out{c.n, {}, concat(c.gates, constant_one(c.family(), c.n))};
  for (const auto& a : c.coefficients) out.coefficients.push_back(-a);
  out.coefficients.emplace_back(1);
  return out;
}

}  // namespace

TEST_CASE("check_boolean examples") {
  CHECK(check_boolean(or_combination()).boolean);

  const LinComb half{1, W({"1/2"}), std::vector<ThresholdGate>{thr({1}, 1)}};
  const auto check = check_boolean(half);
  CHECK_FALSE(check.boolean);
  CHECK(check.deviation == Rational(1, 16));

  const LinComb empty{3, {}, std::vector<ThresholdGate>{}};
  CHECK(check_boolean(empty).boolean);

  const LinComb two{2, W({1L, 1L}), std::vector<ThresholdGate>{thr({1, 0}, 1), thr({0, 1}, 1)}};
  CHECK(check_boolean(two).deviation == 4);  // f(1,1) = 2: 2^2 (1 - 2)^2
}

TEST_CASE("check_boolean works for ReLU and ETHR combinations") {
  // [x1 >= 1] = ReLU(x1) - ReLU(x1 - 1)
  const LinComb pair{1, W({1L, -1L}), std::vector<ReluGate>{relu({1}, 0), relu({1}, -1)}};
  CHECK(check_boolean(pair).boolean);
  const LinComb value{2, W({1L}), std::vector<ReluGate>{relu({1, 1}, 0)}};
  CHECK(check_boolean(value).deviation == 4);

  const LinComb ethrs{2, W({1L, 1L}), std::vector<ExactThresholdGate>{ethr({1, 1}, 0), ethr({1, 1}, 2)}};
  CHECK(check_boolean(ethrs).boolean);
}

TEST_CASE("check_boolean on fp combinations") {
  FpPolynomial x1(3, 2, 1);
  x1.add_term(0b01, 1);
  FpPolynomial two(3, 2, 0);
  two.add_term(0, 2);
  CHECK(check_boolean({2, W({1L}), std::vector<FpPolynomial>{x1}}).boolean);
  CHECK_FALSE(check_boolean({2, W({1L}), std::vector<FpPolynomial>{two}}).boolean);
}

TEST_CASE("check_boolean agrees with the oracle") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 9));
    const LinComb base = trial % 2 == 0 ? random_disjoint_ethr_sum(rng, n, 4) : random_inclusion_exclusion(rng, n, 3);
    const LinComb c = trial % 3 == 0 ? perturb(base, rng, Rational(1, 3)) : base;
    const auto fast = check_boolean(c);
    CHECK(fast.deviation >= 0);
    CHECK(fast.boolean == oracle_check_boolean(c).boolean);
    CHECK(fast.deviation == oracle_boolean_deviation(c));
  }
}

TEST_CASE("check_boolean is invariant under permutation of terms") {
  Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 8));
    LinComb c = perturb(random_inclusion_exclusion(rng, n, 2), rng, Rational(1, 3));
    const Rational before = check_boolean(c).deviation;
    auto& gates = std::get<std::vector<ThresholdGate>>(c.gates);
    std::reverse(gates.begin(), gates.end());
    std::reverse(c.coefficients.begin(), c.coefficients.end());
    CHECK(check_boolean(c).deviation == before);
  }
}

TEST_CASE("boolean_check_calls counts distinct multisets") {
  CHECK(boolean_check_calls(or_combination()) > 0);
  CHECK(boolean_check_calls(or_combination()) <= 9 + 27 + 81);
}

TEST_CASE("count_sat examples") {
  CHECK(count_sat(or_combination()) == 3);
  const LinComb empty{4, {}, std::vector<ThresholdGate>{}};
  CHECK(count_sat(empty) == 0);
  const LinComb x1{3, W({1L}), std::vector<ThresholdGate>{thr({1, 0, 0}, 1)}};
  CHECK(count_sat(x1) == 4);
}

TEST_CASE("count_sat refuses non-Boolean combinations") {
  const LinComb half{1, W({"1/2"}), std::vector<ThresholdGate>{thr({1}, 1)}};
  CHECK_THROWS_AS(count_sat(half), NotBooleanValued);
  CHECK_THROWS_AS(count_sat(half, {.unchecked = true}), NotBooleanValued);  // 1/2 is not an integer
  // f = 2 at one point and -1 at another: sums to an integer but is not Boolean
  const LinComb tricky{1, W({3L, -1L}), std::vector<ThresholdGate>{thr({1}, 1), thr({0}, 0)}};
  CHECK_THROWS_AS(count_sat(tricky), NotBooleanValued);
  CHECK(count_sat(tricky, {.unchecked = true}) == 1);
}

TEST_CASE("count_sat agrees with the oracle and its complement") {
  Rng rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 10));
    const LinComb c = trial % 2 == 0 ? random_disjoint_ethr_sum(rng, n, 4) : random_inclusion_exclusion(rng, n, 3);
    const Integer count = count_sat(c);
    CHECK(count == oracle_count_sat(c));
    CHECK(count_sat(complement(c)) == power_of_two(n) - count);
  }
}

TEST_CASE("check_equal examples") {
  CHECK(check_equal(or_combination(), or_combination()).equal);

  const LinComb x1{1, W({1L}), std::vector<ThresholdGate>{thr({1}, 1)}};
  const LinComb doubled{1, W({1L}), std::vector<ThresholdGate>{thr({2}, 2)}};
  CHECK(check_equal(x1, doubled).equal);

  for (int n : {1, 3}) {
    std::vector<Rational> w(static_cast<std::size_t>(n), Rational(0));
    w[0] = 1;
    const LinComb lhs{n, W({1L}), std::vector<ThresholdGate>{{w, R(1)}}};
    LinComb rhs = lhs;
    rhs.coefficients.emplace_back(1);
    rhs.gates = concat(rhs.gates, constant_one(Family::thr, n));
    const auto check = check_equal(lhs, rhs);
    CHECK_FALSE(check.equal);
    CHECK(check.deviation == Rational(power_of_two(n)));
  }
}

TEST_CASE("check_equal agrees with the oracle") {
  Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 8));
    const LinComb a = random_inclusion_exclusion(rng, n, 2);
    Rational delta(static_cast<long>(rng.uniform(-2, 2)), 2);
    delta.canonicalize();
    const LinComb b = perturb(a, rng, delta);
    CHECK(check_equal(a, b).deviation == oracle_squared_distance(a, b));
  }
}

TEST_CASE("check_equal rejects mismatched inputs") {
  const LinComb relu_c{2, W({1L}), std::vector<ReluGate>{relu({1, 1}, 0)}};
  CHECK_THROWS_AS(check_equal(or_combination(), relu_c), InputError);
  const LinComb wide{3, {}, std::vector<ThresholdGate>{}};
  CHECK_THROWS_AS(check_equal(or_combination(), wide), InputError);
}
