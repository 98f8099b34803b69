#include <doctest.h>

#include "helpers.hpp"
#include "hypersum/instances.hpp"

using namespace hypersum;
using namespace hypersum::test;

TEST_CASE("eval_thr") {
  CHECK(eval_thr(thr({2, -1}, 1), X({1, 1})) == 1);
  CHECK(eval_thr(thr({0, 0}, 0), X({0, 1})) == 1);
  CHECK(eval_thr(thr({-1}, 0), X({1})) == 0);
  CHECK(eval_thr({W({"1/2", "1/2"}), R("1/3")}, X({1, 0})) == 1);
  CHECK_THROWS_AS(eval_thr(thr({1, 1}, 1), X({1})), InputError);
}

TEST_CASE("eval_ethr") {
  CHECK(eval_ethr(ethr({1, 1}, 1), X({1, 0})) == 1);
  CHECK(eval_ethr(ethr({1, 1}, 1), X({1, 1})) == 0);
  CHECK(eval_ethr(ethr({1, 1, 1, 1}, 0), X({0, 0, 0, 0})) == 1);
}

TEST_CASE("eval_relu") {
  CHECK(eval_relu(relu({1, 1}, -1), X({0, 1})) == 0);
  CHECK(eval_relu(relu({1, 1}, 0), X({1, 1})) == 2);
  CHECK(eval_relu({W({"1/2"}), R("1/4")}, X({1})) == Rational(3, 4));
}

TEST_CASE("eval_fp") {
  FpPolynomial q2(2, 3, 2);
  q2.add_term(0b011, 1);
  q2.add_term(0b100, 1);
  CHECK(eval_fp(q2, X({1, 1, 1})) == 0);

  FpPolynomial q3(3, 2, 1);
  q3.add_term(0b01, 1);
  q3.add_term(0b10, 1);
  CHECK(eval_fp(q3, X({1, 1})) == 2);

  const FpPolynomial zero(5, 4, 2);
  CHECK(zero.is_zero());
  CHECK(eval_fp(zero, X({1, 0, 1, 1})) == 0);
}

TEST_CASE("FpPolynomial reduces coefficients and validates terms") {
  FpPolynomial q(5, 3, 2);
  q.add_term(0b001, 7);
  q.add_term(0b001, -2);  // 7 - 2 = 5 = 0
  CHECK(q.is_zero());
  q.add_term(0b011, -1);
  CHECK(q.monomials().at(0b011) == 4);
  CHECK(q.degree() == 2);
  CHECK_THROWS_AS(q.add_term(0b111, 1), InputError);   // degree 3 > bound
  CHECK_THROWS_AS(q.add_term(0b1000, 1), InputError);  // variable 4 of 3
  CHECK_THROWS_AS(FpPolynomial(4, 3, 1), InputError);
  CHECK_THROWS_AS(FpPolynomial(3, 0, 1), InputError);
}

TEST_CASE("gate constructors validate n") {
  CHECK_THROWS_AS(ThresholdGate({}, Rational(0)), InputError);
  CHECK_THROWS_AS(ReluGate(std::vector<Rational>(63, Rational(1)), Rational(0)), InputError);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(65535));
}

TEST_CASE("families round-trip through their names") {
  for (Family f : {Family::thr, Family::ethr, Family::relu, Family::fp}) CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("and"), InputError);
}

TEST_CASE("eval_lincomb") {
  CHECK(eval_lincomb(or_combination(), X({1, 1})) == 1);
  const LinComb empty{3, {}, std::vector<ThresholdGate>{}};
  CHECK(eval_lincomb(empty, X({1, 0, 1})) == 0);
  const LinComb half{1, W({"1/2"}), std::vector<ThresholdGate>{thr({1}, 1)}};
  CHECK(eval_lincomb(half, X({1})) == Rational(1, 2));
}

TEST_CASE("LinComb validation") {
  LinComb c = or_combination();
  c.coefficients.pop_back();
  CHECK_THROWS_AS(c.validate(), InputError);
  const LinComb wrong_n{3, W({1L}), std::vector<ThresholdGate>{thr({1, 1}, 1)}};
  CHECK_THROWS_AS(wrong_n.validate(), InputError);
}

TEST_CASE("select, concat and constant_one") {
  const GateList gates = std::vector<ThresholdGate>{thr({1, 0}, 1), thr({0, 1}, 1), thr({1, 1}, 2)};
  const GateList picked = select(gates, {2, 0});
  REQUIRE(size_of(picked) == 2);
  CHECK(std::get<0>(picked)[0].threshold() == 2);
  CHECK(size_of(concat(gates, picked)) == 5);
  CHECK_THROWS_AS(concat(gates, GateList{std::vector<ReluGate>{}}), InputError);

  for (Family f : {Family::thr, Family::ethr, Family::relu, Family::fp}) {
    const GateList one = constant_one(f, 3, 5);
    CHECK(family_of(one) == f);
    for (std::uint64_t x = 0; x < 8; ++x) CHECK(eval_gate(one, 0, Assignment(x, 3)) == 1);
  }
}

TEST_CASE("normalize_integer") {
  const auto t = normalize_integer(ThresholdGate(W({"1/2", "1/2"}), R("1/3")));
  CHECK(t.scale == 2);
  CHECK(t.gate.weights() == W({1L, 1L}));
  CHECK(t.gate.threshold() == 1);

  const auto e = normalize_integer(ethr({1, 2}, 3));
  CHECK(e.scale == 1);
  CHECK(e.gate.weights() == W({1L, 2L}));
  CHECK(e.gate.target() == 3);

  const auto r = normalize_integer(ReluGate(W({"1/2"}), R("1/2")));
  CHECK(r.scale == 2);
  CHECK(r.gate.weights() == W({1L}));
  CHECK(r.gate.bias() == 1);

  // a fractional ETHR target that no integer point can reach stays unreachable
  const auto f = normalize_integer(ExactThresholdGate(W({1L, 1L}), R("1/2")));
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(eval_ethr(f.gate, Assignment(x, 2)) == 0);
}

TEST_CASE("normalize_integer preserves gate values pointwise") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 6));
    const ReluGate g = random_relu_gate(rng, n, 5, 6);
    const ThresholdGate t(g.weights(), g.bias());
    const ExactThresholdGate e(g.weights(), g.bias());
    const auto nr = normalize_integer(g);
    const auto nt = normalize_integer(t);
    const auto ne = normalize_integer(e);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const Assignment a(x, n);
      CHECK(eval_relu(nr.gate, a) == eval_relu(g, a) * Rational(nr.scale));
      CHECK(eval_thr(nt.gate, a) == eval_thr(t, a));
      CHECK(eval_ethr(ne.gate, a) == eval_ethr(e, a));
    }
  }
}

TEST_CASE("integer_weights rejects fractions") {
  CHECK(integer_weights(W({3L, -4L})) == Z({3, -4}));
  CHECK_THROWS_AS(integer_weights(W({"1/2"})), InputError);
}
