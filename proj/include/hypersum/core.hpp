#pragma once

// Shared vocabulary for the library: exact number types, Boolean points,
// error classes and resource limits.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hypersum {

using Integer = mpz_class;
using Rational = mpq_class;

// Variable subsets and Boolean points are packed into 64-bit masks.
inline constexpr int kMaxVariables = 62;

/// Malformed input: dimension mismatch, bad file, violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap (oracle size, decomposition terms, tuples) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algebraic identity the algorithms rely on did not hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A point of {0,1}^n. Bit i of `bits` is x_{i+1}.
struct Assignment {
  std::uint64_t bits = 0;
  int n = 0;

  Assignment() = default;
  Assignment(std::uint64_t bits_, int n_);

  /// Builds from an explicit 0/1 sequence, x_1 first.
  static Assignment from_values(const std::vector<int>& values);

  bool operator[](int i) const { return (bits >> i) & 1u; }
  bool operator==(const Assignment&) const = default;

  /// "x_1 x_2 ... x_n" as a string of 0/1 characters.
  std::string to_string() const;
};

/// Resource caps. Every expensive loop consults one of these.
struct Limits {
  int oracle_max_vars = 24;
  std::uint64_t max_decomposition_terms = 1'000'000;
  std::uint64_t max_tuples = 10'000'000;
  int max_dense_vars = 28;

  /// Defaults overridden by HYPERSUM_CAP_ORACLE_N, HYPERSUM_CAP_TERMS,
  /// HYPERSUM_CAP_TUPLES and HYPERSUM_CAP_DENSE_N when set.
  static Limits from_environment();
};

/// Parses "p" or "p/q" (base 10, optional leading '-', q > 0).
Rational parse_rational(std::string_view text);

/// Lowest terms, positive denominator, no "/1" for integers.
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

/// Least common multiple of the denominators; 1 for an empty list.
Integer common_denominator(const std::vector<Rational>& values);

/// Smallest integer >= value.
Integer ceil(const Rational& value);

Integer power_of_two(int exponent);

}  // namespace hypersum
