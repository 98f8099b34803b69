#pragma once

// Gate families and their exact pointwise semantics on {0,1}^n.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hypersum/core.hpp"

namespace hypersum {

/// [<w, x> >= t]
class ThresholdGate {
 public:
  ThresholdGate(std::vector<Rational> weights, Rational threshold);

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& threshold() const { return threshold_; }

 private:
  std::vector<Rational> weights_;
  Rational threshold_;
};

/// [<w, x> = t]
class ExactThresholdGate {
 public:
  ExactThresholdGate(std::vector<Rational> weights, Rational target);

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& target() const { return target_; }

 private:
  std::vector<Rational> weights_;
  Rational target_;
};

/// max{0, <w, x> + a}
class ReluGate {
 public:
  ReluGate(std::vector<Rational> weights, Rational bias);

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& bias() const { return bias_; }

 private:
  std::vector<Rational> weights_;
  Rational bias_;
};

/// Sparse multilinear polynomial over F_p. Monomials are variable-subset
/// masks (bit i = x_{i+1}); the empty mask is the constant term. Stored
/// coefficients are always in [1, p).
class FpPolynomial {
 public:
  using Monomials = std::map<std::uint64_t, std::uint32_t>;

  FpPolynomial(std::uint32_t p, int n, int degree_bound);

  /// Adds coeff * prod_{i in mask} x_{i+1}; coeff is reduced mod p.
  void add_term(std::uint64_t mask, std::int64_t coeff);

  std::uint32_t p() const { return p_; }
  int n() const { return n_; }
  int degree_bound() const { return degree_bound_; }
  /// Largest monomial size actually present (0 for constants or zero).
  int degree() const;
  const Monomials& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }

  bool operator==(const FpPolynomial&) const = default;

 private:
  std::uint32_t p_;
  int n_;
  int degree_bound_;
  Monomials monomials_;
};

bool is_prime(std::uint64_t p);

std::uint32_t eval_thr(const ThresholdGate& g, const Assignment& x);
std::uint32_t eval_ethr(const ExactThresholdGate& g, const Assignment& x);
Rational eval_relu(const ReluGate& g, const Assignment& x);
std::uint32_t eval_fp(const FpPolynomial& q, const Assignment& x);

enum class Family { thr, ethr, relu, fp };

std::string to_string(Family family);
Family parse_family(const std::string& name);

using GateList = std::variant<std::vector<ThresholdGate>, std::vector<ExactThresholdGate>,
                              std::vector<ReluGate>, std::vector<FpPolynomial>>;

Family family_of(const GateList& gates);
std::size_t size_of(const GateList& gates);

/// Value of one gate from a list, FP_POLY values lifted to {0,...,p-1}.
Rational eval_gate(const GateList& gates, std::size_t index, const Assignment& x);

/// A sparse linear combination sum_i coefficients[i] * gates[i] over n variables.
struct LinComb {
  int n = 0;
  std::vector<Rational> coefficients;
  GateList gates;

  Family family() const { return family_of(gates); }
  std::size_t sparsity() const { return coefficients.size(); }

  /// Checks equal lengths, shared n, and a common prime for FP_POLY.
  void validate() const;
};

Rational eval_lincomb(const LinComb& c, const Assignment& x);

/// Copy of `gates` keeping only the listed indices, in that order.
GateList select(const GateList& gates, const std::vector<std::size_t>& indices);

/// Concatenation of two lists of the same family.
GateList concat(const GateList& a, const GateList& b);

/// The constant-1 function in the given family.
GateList constant_one(Family family, int n, std::uint32_t p = 2);

template <class Gate>
struct Normalized {
  Gate gate;
  Integer scale;  // positive; weights were multiplied by this
};

/// Integer-weight gate computing the same 0/1 function. The threshold is
/// rounded up after scaling.
Normalized<ThresholdGate> normalize_integer(const ThresholdGate& g);
/// Integer-weight gate computing the same 0/1 function.
Normalized<ExactThresholdGate> normalize_integer(const ExactThresholdGate& g);
/// Integer-weight gate whose value is `scale` times the original.
Normalized<ReluGate> normalize_integer(const ReluGate& g);

/// Weights as integers; throws InputError if any is fractional.
std::vector<Integer> integer_weights(const std::vector<Rational>& weights);

}  // namespace hypersum
