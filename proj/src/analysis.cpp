#include "hypersum/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "hypersum/sumprod.hpp"

namespace hypersum {

namespace {

using Monomial = std::vector<std::size_t>;  // sorted gate indices

bool idempotent(Family family) { return family == Family::thr || family == Family::ethr; }

Integer factorial(std::size_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// sum_r weight_r * (sum_i alpha_i g_i)^r as merged monomials in the gates.
std::map<Monomial, Rational> expand_powers(const LinComb& c, const std::vector<std::pair<std::size_t, Rational>>& powers) {
  const std::size_t s = c.sparsity();
  const bool merge_repeats = idempotent(c.family());
  std::map<Monomial, Rational> terms;
  for (const auto& [order, weight] : powers) {
    Monomial tuple;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
      if (tuple.size() == order) {
        Rational coeff = weight;
        Integer multinomial = factorial(order);
        for (std::size_t i = 0; i < order;) {
          std::size_t j = i;
          while (j < order && tuple[j] == tuple[i]) ++j;
          multinomial /= factorial(j - i);
          i = j;
        }
        coeff *= multinomial;
        for (auto idx : tuple) coeff *= c.coefficients[idx];
        Monomial key = tuple;
        if (merge_repeats) key.erase(std::unique(key.begin(), key.end()), key.end());
        terms[key] += coeff;
        return;
      }
      for (std::size_t i = from; i < s; ++i) {
        if (c.coefficients[i] == 0) continue;
        tuple.push_back(i);
        extend(i);
        tuple.pop_back();
      }
    };
    extend(0);
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  return terms;
}

Rational evaluate(const LinComb& c, const std::map<Monomial, Rational>& terms, const Limits& limits,
                  MitmStats* stats) {
  Rational total = 0;
  for (const auto& [monomial, coeff] : terms) {
    total += coeff * sumprod(select(c.gates, monomial), c.n, limits, stats);
  }
  return total;
}

const std::vector<std::pair<std::size_t, Rational>>& boolean_powers() {
  // f^2 (1 - f)^2 = f^2 - 2 f^3 + f^4
  static const std::vector<std::pair<std::size_t, Rational>> powers{{2, 1}, {3, -2}, {4, 1}};
  return powers;
}

}  // namespace

std::size_t boolean_check_calls(const LinComb& c) {
  c.validate();
  return expand_powers(c, boolean_powers()).size();
}

BooleanCheck check_boolean(const LinComb& c, const Limits& limits, MitmStats* stats) {
  c.validate();
  const Rational deviation = evaluate(c, expand_powers(c, boolean_powers()), limits, stats);
  if (deviation < 0) {
    throw InvariantViolation("negative Boolean deviation " + format_rational(deviation));
  }
  return {deviation == 0, deviation};
}

Integer count_sat(const LinComb& c, const CountSatOptions& options, const Limits& limits, MitmStats* stats) {
  c.validate();
  if (!options.unchecked) {
    const BooleanCheck check = check_boolean(c, limits, stats);
    if (!check.boolean) {
      throw NotBooleanValued("combination is not Boolean-valued (deviation " + format_rational(check.deviation) +
                             ")");
    }
  }
  Rational total = 0;
  for (std::size_t i = 0; i < c.sparsity(); ++i) {
    if (c.coefficients[i] == 0) continue;
    total += c.coefficients[i] * sumprod(select(c.gates, {i}), c.n, limits, stats);
  }
  if (!is_integer(total) || total < 0 || total > Rational(power_of_two(c.n))) {
    throw NotBooleanValued("satisfying-assignment count " + format_rational(total) +
                           " is not an integer in [0, 2^n]; the combination is not Boolean-valued");
  }
  return total.get_num();
}

EqualityCheck check_equal(const LinComb& c1, const LinComb& c2, const Limits& limits, MitmStats* stats) {
  c1.validate();
  c2.validate();
  if (c1.n != c2.n) throw InputError("combinations have different variable counts");
  if (c1.family() != c2.family()) throw InputError("combinations use different gate families");
  LinComb merged{c1.n, c1.coefficients, concat(c1.gates, c2.gates)};
  for (const auto& beta : c2.coefficients) merged.coefficients.push_back(-beta);
  merged.validate();
  const Rational deviation = evaluate(merged, expand_powers(merged, {{2, 1}}), limits, stats);
  if (deviation < 0) {
    throw InvariantViolation("negative squared distance " + format_rational(deviation));
  }
  return {deviation == 0, deviation};
}

}  // namespace hypersum
