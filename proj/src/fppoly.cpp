#include "hypersum/fppoly.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

namespace hypersum {

namespace {

constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 62;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

std::uint64_t reduce(const Integer& v, std::uint64_t m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), Integer(std::to_string(m)).get_mpz_t());
  return std::stoull(r.get_str());
}

Integer to_integer(std::uint64_t v) { return Integer(std::to_string(v)); }

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- amplifier

Integer ModAmplifier::operator()(const Integer& y) const {
  Integer acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * y + *it;
  return acc;
}

ModAmplifier mod_amplifier(int ell) {
  if (ell < 1) throw InputError("amplifier degree parameter must be positive");
  const auto l = static_cast<unsigned long>(ell);
  std::vector<Integer> one_minus_y_pow(l + 1);
  for (unsigned long i = 0; i <= l; ++i) {
    one_minus_y_pow[i] = binomial(l, i);
    if (i % 2 == 1) one_minus_y_pow[i] = -one_minus_y_pow[i];
  }
  std::vector<Integer> tail(l);
  for (unsigned long j = 0; j < l; ++j) tail[j] = binomial(l + j - 1, j);
  auto prod = poly_mul(one_minus_y_pow, tail);
  for (auto& c : prod) c = -c;
  prod[0] += 1;
  while (prod.size() > 1 && prod.back() == 0) prod.pop_back();
  return {ell, std::move(prod)};
}

// ------------------------------------------------------- multilinear ring

MultilinearRingPoly::MultilinearRingPoly(std::uint64_t modulus, int n_vars) : modulus_(modulus), n_vars_(n_vars) {
  if (modulus < 2 || modulus >= kModulusLimit) throw InputError("ring modulus out of range");
  if (n_vars < 0 || n_vars > kMaxVariables) throw InputError("variable count out of range");
}

MultilinearRingPoly MultilinearRingPoly::constant(std::uint64_t modulus, int n_vars, std::int64_t value) {
  MultilinearRingPoly out(modulus, n_vars);
  const auto m = static_cast<std::int64_t>(modulus);
  out.add_term(0, static_cast<std::uint64_t>(((value % m) + m) % m));
  return out;
}

void MultilinearRingPoly::add_term(std::uint64_t mask, std::uint64_t coeff) {
  if (n_vars_ < 64 && (mask >> n_vars_) != 0) throw InputError("monomial uses a variable beyond n_vars");
  coeff %= modulus_;
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(mask, coeff);
  if (!inserted) {
    it->second = add_mod(it->second, coeff, modulus_);
    if (it->second == 0) terms_.erase(it);
  }
}

int MultilinearRingPoly::degree() const {
  int d = 0;
  for (const auto& [mask, _] : terms_) d = std::max(d, std::popcount(mask));
  return d;
}

std::uint64_t MultilinearRingPoly::coefficient(std::uint64_t mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? 0 : it->second;
}

MultilinearRingPoly& MultilinearRingPoly::operator+=(const MultilinearRingPoly& other) {
  if (other.modulus_ != modulus_ || other.n_vars_ != n_vars_) throw InputError("ring polynomial mismatch");
  for (const auto& [mask, c] : other.terms_) add_term(mask, c);
  return *this;
}

MultilinearRingPoly MultilinearRingPoly::operator+(const MultilinearRingPoly& other) const {
  MultilinearRingPoly out = *this;
  out += other;
  return out;
}

MultilinearRingPoly MultilinearRingPoly::scaled(std::uint64_t factor) const {
  MultilinearRingPoly out(modulus_, n_vars_);
  for (const auto& [mask, c] : terms_) out.add_term(mask, mul_mod(c, factor % modulus_, modulus_));
  return out;
}

MultilinearRingPoly ml_multiply(const MultilinearRingPoly& a, const MultilinearRingPoly& b) {
  if (a.modulus() != b.modulus() || a.n_vars() != b.n_vars()) {
    throw InputError("ring polynomials differ in modulus or variable count");
  }
  const std::uint64_t m = a.modulus();
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  acc.reserve(a.terms().size() * b.terms().size());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto& slot = acc[ma | mb];
      slot = add_mod(slot, mul_mod(ca, cb, m), m);
    }
  }
  MultilinearRingPoly out(m, a.n_vars());
  for (const auto& [mask, c] : acc) out.add_term(mask, c);
  return out;
}

// ---------------------------------------------------------- zeta transform

void zeta_transform_serial(std::vector<std::uint64_t>& table, int n_vars, std::uint64_t modulus) {
  const std::size_t size = std::size_t{1} << n_vars;
  if (table.size() != size) throw InputError("zeta table has the wrong size");
  for (int i = 0; i < n_vars; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (mask & bit) table[mask] = add_mod(table[mask], table[mask ^ bit], modulus);
    }
  }
}

void zeta_transform(std::vector<std::uint64_t>& table, int n_vars, std::uint64_t modulus) {
  const std::size_t size = std::size_t{1} << n_vars;
  if (table.size() != size) throw InputError("zeta table has the wrong size");
  for (int i = 0; i < n_vars; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    // Each block of 2*bit entries is independent for this variable.
    const auto blocks = static_cast<std::int64_t>(size / (2 * bit));
#pragma omp parallel for schedule(static) if (size >= (std::size_t{1} << 14))
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
      std::uint64_t* lo = table.data() + static_cast<std::size_t>(blk) * 2 * bit;
      std::uint64_t* hi = lo + bit;
      for (std::size_t j = 0; j < bit; ++j) hi[j] = add_mod(hi[j], lo[j], modulus);
    }
  }
}

std::vector<std::uint64_t> eval_all_points(const MultilinearRingPoly& poly, const Limits& limits) {
  if (poly.n_vars() > limits.max_dense_vars) {
    throw CapExceeded("dense evaluation limited to " + std::to_string(limits.max_dense_vars) + " variables, got " +
                      std::to_string(poly.n_vars()));
  }
  std::vector<std::uint64_t> table(std::size_t{1} << poly.n_vars(), 0);
  for (const auto& [mask, c] : poly.terms()) table[mask] = c;
  zeta_transform(table, poly.n_vars(), poly.modulus());
  return table;
}

// ------------------------------------------------------------ Q and roots

FpSumProdParams FpSumProdParams::standard(std::uint32_t p, int d, int k, int n) {
  const int dd = std::max(d, 1);
  return {p, dd, k, n, n / (6 * dd * static_cast<int>(p))};
}

int FpSumProdParams::amplification() const {
  int ell = std::max(m, 1);
  Integer pl = 1;
  for (int i = 0; i < ell; ++i) pl *= p;
  while (pl <= power_of_two(m)) {
    pl *= p;
    ++ell;
  }
  return ell;
}

std::uint64_t FpSumProdParams::modulus() const {
  Integer pl = 1;
  for (int i = 0, ell = amplification(); i < ell; ++i) pl *= p;
  if (pl >= Integer(std::to_string(kModulusLimit))) {
    throw CapExceeded("amplified modulus " + pl.get_str() + " does not fit in a machine word");
  }
  return std::stoull(pl.get_str());
}

namespace {

// q with x_{n-m+1..n} fixed to the bits of `suffix`, as a ring polynomial
// over the first n - m variables.
MultilinearRingPoly restrict_suffix(const FpPolynomial& q, int m, std::uint64_t suffix, std::uint64_t modulus) {
  const int prefix_vars = q.n() - m;
  const std::uint64_t prefix_mask = prefix_vars >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << prefix_vars) - 1;
  MultilinearRingPoly out(modulus, prefix_vars);
  for (const auto& [mask, coeff] : q.monomials()) {
    const std::uint64_t tail = mask >> prefix_vars;
    if ((tail & ~suffix) != 0) continue;
    out.add_term(mask & prefix_mask, coeff);
  }
  return out;
}

MultilinearRingPoly compose(const ModAmplifier& amp, const MultilinearRingPoly& y) {
  const std::uint64_t m = y.modulus();
  MultilinearRingPoly acc(m, y.n_vars());
  for (auto it = amp.coefficients.rbegin(); it != amp.coefficients.rend(); ++it) {
    acc = ml_multiply(acc, y);
    acc.add_term(0, reduce(*it, m));
  }
  return acc;
}

}  // namespace

MultilinearRingPoly build_Q(const FpPolynomial& q, const FpSumProdParams& params) {
  if (params.m < 1) throw InputError("build_Q needs at least one suffix variable");
  if (params.m > q.n()) throw InputError("suffix longer than the variable count");
  if (params.p != q.p()) throw InputError("parameter prime differs from the polynomial's");
  const std::uint64_t modulus = params.modulus();
  const ModAmplifier amp = mod_amplifier(params.amplification());
  const int prefix_vars = q.n() - params.m;

  MultilinearRingPoly total(modulus, prefix_vars);
  // Distinct restrictions are few for sparse q; reuse their images.
  std::map<MultilinearRingPoly::Terms, MultilinearRingPoly> seen;
  for (std::uint64_t suffix = 0; suffix < (std::uint64_t{1} << params.m); ++suffix) {
    const MultilinearRingPoly r = restrict_suffix(q, params.m, suffix, modulus);
    auto it = seen.find(r.terms());
    if (it == seen.end()) {
      MultilinearRingPoly power = r;
      for (std::uint32_t e = 2; e < q.p(); ++e) power = ml_multiply(power, r);
      MultilinearRingPoly y = MultilinearRingPoly::constant(modulus, prefix_vars, 1);
      y += power.scaled(modulus - 1);
      it = seen.emplace(r.terms(), compose(amp, y)).first;
    }
    total += it->second;
  }
  return total;
}

Integer count_roots(const FpPolynomial& q, const Limits& limits) {
  return count_roots(q, FpSumProdParams::standard(q.p(), q.degree_bound(), 1, q.n()).m, limits);
}

Integer count_roots(const FpPolynomial& q, int m, const Limits& limits) {
  if (m < 0 || m > q.n()) throw InputError("suffix size out of range");
  if (m == 0) {
    MultilinearRingPoly lifted(q.p(), q.n());
    for (const auto& [mask, c] : q.monomials()) lifted.add_term(mask, c);
    const auto values = eval_all_points(lifted, limits);
    return to_integer(static_cast<std::uint64_t>(std::count(values.begin(), values.end(), 0)));
  }
  FpSumProdParams params{q.p(), std::max(q.degree_bound(), 1), 1, q.n(), m};
  const auto values = eval_all_points(build_Q(q, params), limits);
  const std::uint64_t per_prefix_max = std::uint64_t{1} << m;
  std::uint64_t total = 0;
  for (const auto v : values) {
    if (v > per_prefix_max) {
      throw InvariantViolation("prefix residue " + std::to_string(v) + " exceeds 2^m = " +
                               std::to_string(per_prefix_max));
    }
    total += v;
  }
  return to_integer(total);
}

// ---------------------------------------------------------------- systems

FpPolynomial fp_combination(const std::vector<FpPolynomial>& polys, const std::vector<std::uint32_t>& b,
                            const std::vector<std::uint32_t>& targets, std::uint32_t shift) {
  if (polys.empty()) throw InputError("empty polynomial system");
  if (b.size() != polys.size() || targets.size() != polys.size()) throw InputError("system length mismatch");
  const std::uint32_t p = polys.front().p();
  int d = 0;
  for (const auto& q : polys) d = std::max(d, q.degree_bound());
  FpPolynomial out(p, polys.front().n(), d);
  std::int64_t constant = -static_cast<std::int64_t>(shift % p);
  for (std::size_t j = 0; j < polys.size(); ++j) {
    const std::uint64_t bj = b[j] % p;
    if (bj == 0) continue;
    for (const auto& [mask, c] : polys[j].monomials()) out.add_term(mask, static_cast<std::int64_t>(bj * c % p));
    constant -= static_cast<std::int64_t>(bj * (targets[j] % p) % p);
  }
  out.add_term(0, constant);
  return out;
}

SystemCounter::SystemCounter(std::vector<FpPolynomial> polys, const Limits& limits, int forced_m)
    : polys_(std::move(polys)), limits_(limits), forced_m_(forced_m) {
  if (polys_.empty()) throw InputError("empty polynomial system");
  p_ = polys_.front().p();
  for (const auto& q : polys_) {
    if (q.p() != p_) throw InputError("polynomials use different primes");
    if (q.n() != polys_.front().n()) throw InputError("polynomials have different variable counts");
  }
  const std::size_t k = polys_.size();
  combos_ = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (combos_ > limits_.max_tuples / p_) throw CapExceeded("p^k coefficient vectors exceed the tuple cap");
    combos_ *= p_;
  }
  const std::vector<std::uint32_t> zeros(k, 0);
  // Lexicographic order, b_1 most significant.
  for (std::size_t idx = 0; idx < combos_; ++idx) {
    std::vector<std::uint32_t> b(k);
    std::size_t rest = idx;
    for (std::size_t j = k; j-- > 0;) {
      b[j] = static_cast<std::uint32_t>(rest % p_);
      rest /= p_;
    }
    linear_.push_back(fp_combination(polys_, b, zeros, 0));
    b_values_.push_back(std::move(b));
  }
  table_.assign(combos_ * p_, Integer(0));
  known_.assign(combos_ * p_, false);
}

const Integer& SystemCounter::roots(std::size_t b_index, std::uint32_t constant) {
  const std::size_t slot = b_index * p_ + constant;
  if (!known_[slot]) {
    const FpPolynomial shifted = fp_combination({linear_[b_index]}, {1}, {0}, constant);
    table_[slot] = forced_m_ >= 0 ? count_roots(shifted, std::min(forced_m_, shifted.n()), limits_)
                                  : count_roots(shifted, limits_);
    known_[slot] = true;
    ++computed_;
  }
  return table_[slot];
}

SystemCount SystemCounter::count(const std::vector<std::uint32_t>& targets) {
  if (targets.size() != polys_.size()) throw InputError("need one target per polynomial");
  Integer acc = 0;
  for (std::size_t idx = 0; idx < combos_; ++idx) {
    const auto& b = b_values_[idx];
    std::uint64_t c = 0;
    for (std::size_t j = 0; j < b.size(); ++j) c = (c + std::uint64_t{b[j]} * (targets[j] % p_)) % p_;
    const auto zero_at = static_cast<std::uint32_t>(c);
    const auto one_at = static_cast<std::uint32_t>((c + 1) % p_);
    acc += roots(idx, zero_at);
    acc -= roots(idx, one_at);
  }
  Integer scale = 1;
  for (std::size_t j = 0; j < polys_.size(); ++j) scale *= p_;
  if (acc % scale != 0) {
    throw InvariantViolation("system accumulator " + acc.get_str() + " is not divisible by " + scale.get_str());
  }
  Integer count = acc / scale;
  if (count < 0) throw InvariantViolation("negative system solution count");
  return {count, acc};
}

SystemCount count_system(const std::vector<FpPolynomial>& polys, const std::vector<std::uint32_t>& targets,
                         const Limits& limits) {
  SystemCounter counter(polys, limits);
  return counter.count(targets);
}

Integer sumprod_fp(const std::vector<FpPolynomial>& polys, int n, const Limits& limits, int forced_m) {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (polys.empty()) return power_of_two(n);
  for (const auto& q : polys) {
    if (q.n() != n) throw InputError("polynomial has " + std::to_string(q.n()) + " variables, expected " +
                                     std::to_string(n));
  }
  SystemCounter counter(polys, limits, forced_m);
  const std::uint32_t p = polys.front().p();
  const std::size_t k = polys.size();
  // a ranges over (F_p^*)^k; tuples containing 0 carry zero weight.
  std::vector<std::uint32_t> a(k, 1);
  Integer total = 0;
  while (true) {
    Integer weight = 1;
    for (auto v : a) weight *= v;
    total += weight * counter.count(a).count;
    std::size_t j = k;
    while (j > 0 && a[j - 1] == p - 1) a[--j] = 1;
    if (j == 0) break;
    ++a[j - 1];
  }
  return total;
}

}  // namespace hypersum
