#include <doctest.h>

#include "helpers.hpp"
#include "hypersum/oracle.hpp"

using namespace hypersum;
using namespace hypersum::test;

TEST_CASE("oracle_sumprod examples") {
  CHECK(oracle_sumprod(std::vector<ThresholdGate>{thr({1, 1}, 1), thr({1, -1}, 0)}, 2) == 2);
  CHECK(oracle_sumprod(std::vector<ReluGate>{relu({1, 1}, 0)}, 2) == 4);
  CHECK(oracle_sumprod(std::vector<ThresholdGate>{}, 3) == 8);
  CHECK(oracle_sumprod(std::vector<ReluGate>{{W({"1/2", "-1/3"}), R("1/4")}}, 2) ==
        Rational(1, 4) + Rational(3, 4) + 0 + Rational(5, 12));
}

TEST_CASE("oracle_sumprod lifts field values") {
  FpPolynomial q(3, 2, 1);
  q.add_term(0b01, 1);
  q.add_term(0b10, 1);
  CHECK(oracle_sumprod(std::vector<FpPolynomial>{q, q}, 2) == 1 + 1 + 4);
}

TEST_CASE("oracle_check_boolean examples") {
  CHECK(oracle_check_boolean(or_combination()).boolean);

  const LinComb two{2, W({1L, 1L}), std::vector<ThresholdGate>{thr({1, 0}, 1), thr({0, 1}, 1)}};
  const auto check = oracle_check_boolean(two);
  CHECK_FALSE(check.boolean);
  REQUIRE(check.witness);
  CHECK(check.witness->to_string() == "11");

  const LinComb empty{2, {}, std::vector<ThresholdGate>{}};
  CHECK(oracle_check_boolean(empty).boolean);
}

TEST_CASE("oracle deviation and distance") {
  const LinComb half{1, W({"1/2"}), std::vector<ThresholdGate>{thr({1}, 1)}};
  CHECK(oracle_boolean_deviation(half) == Rational(1, 16));
  CHECK(oracle_boolean_deviation(or_combination()) == 0);
  const LinComb x1{1, W({1L}), std::vector<ThresholdGate>{thr({1}, 1)}};
  CHECK(oracle_squared_distance(half, x1) == Rational(1, 4));
}

TEST_CASE("oracle_count_sat") {
  CHECK(oracle_count_sat(or_combination()) == 3);
  const LinComb zero{5, {}, std::vector<ThresholdGate>{}};
  CHECK(oracle_count_sat(zero) == 0);
  const LinComb x1{3, W({1L}), std::vector<ThresholdGate>{thr({1, 0, 0}, 1)}};
  CHECK(oracle_count_sat(x1) == 4);
  const LinComb half{1, W({"1/2"}), std::vector<ThresholdGate>{thr({1}, 1)}};
  CHECK_THROWS_AS(oracle_count_sat(half), InputError);
}

TEST_CASE("oracle_count_fp_system") {
  FpPolynomial sum(2, 2, 1);
  sum.add_term(0b01, 1);
  sum.add_term(0b10, 1);
  CHECK(oracle_count_fp_system({sum}, {0}) == 2);

  FpPolynomial q(2, 3, 2);
  q.add_term(0b011, 1);
  q.add_term(0b100, 1);
  CHECK(oracle_count_fp_system({q}, {0}) == 4);

  FpPolynomial x1(3, 1, 1);
  x1.add_term(0b1, 1);
  CHECK(oracle_count_fp_system({x1, x1}, {1, 2}) == 0);
  CHECK_THROWS_AS(oracle_count_fp_system({x1}, {0, 1}), InputError);
}

TEST_CASE("oracle respects its variable cap") {
  Limits limits;
  limits.oracle_max_vars = 4;
  CHECK_THROWS_AS(oracle_sumprod(std::vector<ThresholdGate>{}, 5, limits), CapExceeded);
  CHECK(oracle_sumprod(std::vector<ThresholdGate>{}, 4, limits) == 16);
}
