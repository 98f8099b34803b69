#pragma once

// Counting Boolean roots of F_p polynomials and Sum-Products of them.
//
// Roots of q are counted by summing out the last m variables into a
// polynomial Q over the remaining n - m variables,
//   Q(y) = sum_{a in {0,1}^m} P_l(1 - q(y, a)^(p-1))   (mod p^l),
// where P_l maps residues 0/1 mod p to 0/1 mod p^l. Q(y) mod p^l is then
// the number of suffixes a with q(y, a) = 0, and evaluating Q on every
// prefix with a zeta transform counts all roots.

#include <cstdint>
#include <map>
#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"

namespace hypersum {

/// P_l(y) = 1 - (1 - y)^l * sum_{j<l} C(l+j-1, j) y^j, dense coefficients
/// of y^0 .. y^(2l-1).
struct ModAmplifier {
  int ell = 0;
  std::vector<Integer> coefficients;

  Integer operator()(const Integer& y) const;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

ModAmplifier mod_amplifier(int ell);

/// Multilinear polynomial with coefficients in Z / modulus. Zero
/// coefficients are never stored.
class MultilinearRingPoly {
 public:
  using Terms = std::map<std::uint64_t, std::uint64_t>;

  MultilinearRingPoly(std::uint64_t modulus, int n_vars);

  static MultilinearRingPoly constant(std::uint64_t modulus, int n_vars, std::int64_t value);

  void add_term(std::uint64_t mask, std::uint64_t coeff);

  std::uint64_t modulus() const { return modulus_; }
  int n_vars() const { return n_vars_; }
  const Terms& terms() const { return terms_; }
  int degree() const;
  std::uint64_t coefficient(std::uint64_t mask) const;

  MultilinearRingPoly operator+(const MultilinearRingPoly& other) const;
  MultilinearRingPoly& operator+=(const MultilinearRingPoly& other);
  MultilinearRingPoly scaled(std::uint64_t factor) const;

  bool operator==(const MultilinearRingPoly&) const = default;

 private:
  std::uint64_t modulus_;
  int n_vars_;
  Terms terms_;
};

/// Product with x_i^2 reduced to x_i (union of monomial supports).
MultilinearRingPoly ml_multiply(const MultilinearRingPoly& a, const MultilinearRingPoly& b);

/// Values at all 2^n_vars points; entry x is the value at the point whose
/// bit i is x_{i+1}. OpenMP-parallel zeta transform over a dense table.
std::vector<std::uint64_t> eval_all_points(const MultilinearRingPoly& poly, const Limits& limits = {});

/// Serial reference for the in-place zeta transform (mod `modulus`).
void zeta_transform_serial(std::vector<std::uint64_t>& table, int n_vars, std::uint64_t modulus);
void zeta_transform(std::vector<std::uint64_t>& table, int n_vars, std::uint64_t modulus);

struct FpSumProdParams {
  std::uint32_t p = 2;
  int d = 1;
  int k = 1;
  int n = 1;
  int m = 0;  // suffix variables summed into Q

  /// m = floor(n / (6 d p)) with d at least 1.
  static FpSumProdParams standard(std::uint32_t p, int d, int k, int n);

  /// Amplification depth l: the smallest l >= m with p^l > 2^m, so every
  /// per-prefix count (at most 2^m) is a distinct residue mod p^l.
  int amplification() const;
  std::uint64_t modulus() const;
};

/// Q over the first n - m variables, modulus p^amplification(). Requires m >= 1.
MultilinearRingPoly build_Q(const FpPolynomial& q, const FpSumProdParams& params);

/// |{x in {0,1}^n : q(x) = 0}|, through Q when floor(n/(6dp)) >= 1 and by
/// evaluating q everywhere otherwise.
Integer count_roots(const FpPolynomial& q, const Limits& limits = {});

/// Same, with an explicit suffix size m (m = 0 evaluates q everywhere).
Integer count_roots(const FpPolynomial& q, int m, const Limits& limits = {});

struct SystemCount {
  Integer count;
  Integer accumulator;  // p^k * count before the final division
};

/// Counts Boolean solutions of systems p_j(x) = a_j for a fixed list of
/// polynomials and any targets a, as
///   p^-k sum_{b in F_p^k} (#[sum_j b_j (p_j - a_j) = 0] - #[... = 1]).
/// sum_j b_j (p_j - a_j) - c only depends on b and c + <b, a>, so root
/// counts are memoized per (b, constant). Not thread-safe.
class SystemCounter {
 public:
  /// `forced_m` >= 0 overrides the suffix size used by count_roots.
  SystemCounter(std::vector<FpPolynomial> polys, const Limits& limits = {}, int forced_m = -1);

  SystemCount count(const std::vector<std::uint32_t>& targets);
  std::size_t root_counts_computed() const { return computed_; }

 private:
  const Integer& roots(std::size_t b_index, std::uint32_t constant);

  std::vector<FpPolynomial> polys_;
  Limits limits_;
  int forced_m_;
  std::uint32_t p_;
  std::size_t combos_;                 // p^k
  std::vector<FpPolynomial> linear_;   // sum_j b_j p_j, indexed by b
  std::vector<std::vector<std::uint32_t>> b_values_;
  std::vector<Integer> table_;         // combos_ * p entries
  std::vector<bool> known_;
  std::size_t computed_ = 0;
};

SystemCount count_system(const std::vector<FpPolynomial>& polys, const std::vector<std::uint32_t>& targets,
                         const Limits& limits = {});

/// sum_x prod_i polys[i](x) with values lifted to {0..p-1}:
///   sum_{a in (F_p^*)^k} a_1 ... a_k * count_system(polys, a).
/// An empty list gives 2^n.
Integer sumprod_fp(const std::vector<FpPolynomial>& polys, int n, const Limits& limits = {}, int forced_m = -1);

/// sum_j b_j * (polys[j] - targets[j]) - shift, over F_p.
FpPolynomial fp_combination(const std::vector<FpPolynomial>& polys, const std::vector<std::uint32_t>& b,
                            const std::vector<std::uint32_t>& targets, std::uint32_t shift);

}  // namespace hypersum
