#include "hypersum/gates.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <utility>

namespace hypersum {

namespace {

void check_width(std::size_t n, const char* what) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxVariables)) {
    throw InputError(std::string(what) + " needs between 1 and " + std::to_string(kMaxVariables) +
                     " weights, got " + std::to_string(n));
  }
}

void check_dimension(int expected, const Assignment& x) {
  if (x.n != expected) {
    throw InputError("dimension mismatch: gate has " + std::to_string(expected) +
                     " variables, point has " + std::to_string(x.n));
  }
}

Rational dot(const std::vector<Rational>& w, const Assignment& x) {
  Rational s = 0;
  for (int i = 0; i < x.n; ++i) {
    if (x[i]) s += w[static_cast<std::size_t>(i)];
  }
  return s;
}

std::vector<Rational> scaled(const std::vector<Rational>& w, const Integer& c) {
  std::vector<Rational> out;
  out.reserve(w.size());
  for (const auto& v : w) out.emplace_back(v * c);
  return out;
}

}  // namespace

ThresholdGate::ThresholdGate(std::vector<Rational> weights, Rational threshold)
    : weights_(std::move(weights)), threshold_(std::move(threshold)) {
  check_width(weights_.size(), "threshold gate");
}

ExactThresholdGate::ExactThresholdGate(std::vector<Rational> weights, Rational target)
    : weights_(std::move(weights)), target_(std::move(target)) {
  check_width(weights_.size(), "exact threshold gate");
}

ReluGate::ReluGate(std::vector<Rational> weights, Rational bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  check_width(weights_.size(), "ReLU gate");
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FpPolynomial::FpPolynomial(std::uint32_t p, int n, int degree_bound)
    : p_(p), n_(n), degree_bound_(degree_bound) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  check_width(static_cast<std::size_t>(n), "F_p polynomial");
  if (degree_bound < 0) throw InputError("negative degree bound");
}

void FpPolynomial::add_term(std::uint64_t mask, std::int64_t coeff) {
  if ((mask >> n_) != 0) throw InputError("monomial uses a variable beyond n");
  if (std::popcount(mask) > degree_bound_) {
    throw InputError("monomial of degree " + std::to_string(std::popcount(mask)) +
                     " exceeds degree bound " + std::to_string(degree_bound_));
  }
  const auto pp = static_cast<std::int64_t>(p_);
  const std::int64_t c = ((coeff % pp) + pp) % pp;
  if (c == 0) return;
  auto [it, inserted] = monomials_.try_emplace(mask, static_cast<std::uint32_t>(c));
  if (!inserted) {
    it->second = static_cast<std::uint32_t>((it->second + static_cast<std::uint64_t>(c)) % p_);
    if (it->second == 0) monomials_.erase(it);
  }
}

int FpPolynomial::degree() const {
  int d = 0;
  for (const auto& [mask, _] : monomials_) d = std::max(d, std::popcount(mask));
  return d;
}

std::uint32_t eval_thr(const ThresholdGate& g, const Assignment& x) {
  check_dimension(g.n(), x);
  return dot(g.weights(), x) >= g.threshold() ? 1u : 0u;
}

std::uint32_t eval_ethr(const ExactThresholdGate& g, const Assignment& x) {
  check_dimension(g.n(), x);
  return dot(g.weights(), x) == g.target() ? 1u : 0u;
}

Rational eval_relu(const ReluGate& g, const Assignment& x) {
  check_dimension(g.n(), x);
  Rational s = dot(g.weights(), x) + g.bias();
  return s > 0 ? s : Rational(0);
}

std::uint32_t eval_fp(const FpPolynomial& q, const Assignment& x) {
  check_dimension(q.n(), x);
  std::uint64_t acc = 0;
  for (const auto& [mask, coeff] : q.monomials()) {
    if ((mask & x.bits) == mask) acc += coeff;
  }
  return static_cast<std::uint32_t>(acc % q.p());
}

std::string to_string(Family family) {
  switch (family) {
    case Family::thr: return "thr";
    case Family::ethr: return "ethr";
    case Family::relu: return "relu";
    case Family::fp: return "fp";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "thr") return Family::thr;
  if (name == "ethr") return Family::ethr;
  if (name == "relu") return Family::relu;
  if (name == "fp") return Family::fp;
  throw InputError("unknown gate family '" + name + "'");
}

Family family_of(const GateList& gates) { return static_cast<Family>(gates.index()); }

std::size_t size_of(const GateList& gates) {
  return std::visit([](const auto& v) { return v.size(); }, gates);
}

Rational eval_gate(const GateList& gates, std::size_t index, const Assignment& x) {
  return std::visit(
      [&](const auto& list) -> Rational {
        using T = typename std::decay_t<decltype(list)>::value_type;
        const auto& g = list.at(index);
        if constexpr (std::is_same_v<T, ThresholdGate>) {
          return eval_thr(g, x);
        } else if constexpr (std::is_same_v<T, ExactThresholdGate>) {
          return eval_ethr(g, x);
        } else if constexpr (std::is_same_v<T, ReluGate>) {
          return eval_relu(g, x);
        } else {
          return eval_fp(g, x);
        }
      },
      gates);
}

void LinComb::validate() const {
  if (n < 1 || n > kMaxVariables) throw InputError("variable count out of range");
  if (coefficients.size() != size_of(gates)) {
    throw InputError("coefficient count " + std::to_string(coefficients.size()) +
                     " differs from gate count " + std::to_string(size_of(gates)));
  }
  std::visit(
      [&](const auto& list) {
        for (std::size_t i = 0; i < list.size(); ++i) {
          if (list[i].n() != n) {
            throw InputError("gate " + std::to_string(i) + " has " + std::to_string(list[i].n()) +
                             " variables, expected " + std::to_string(n));
          }
          if constexpr (std::is_same_v<std::decay_t<decltype(list[i])>, FpPolynomial>) {
            if (list[i].p() != list.front().p()) throw InputError("polynomials use different primes");
          }
        }
      },
      gates);
}

Rational eval_lincomb(const LinComb& c, const Assignment& x) {
  if (x.n != c.n) {
    throw InputError("dimension mismatch: combination has " + std::to_string(c.n) +
                     " variables, point has " + std::to_string(x.n));
  }
  Rational s = 0;
  for (std::size_t i = 0; i < c.sparsity(); ++i) s += c.coefficients[i] * eval_gate(c.gates, i, x);
  return s;
}

GateList select(const GateList& gates, const std::vector<std::size_t>& indices) {
  return std::visit(
      [&](const auto& list) -> GateList {
        std::decay_t<decltype(list)> out;
        out.reserve(indices.size());
        for (auto i : indices) out.push_back(list.at(i));
        return out;
      },
      gates);
}

GateList concat(const GateList& a, const GateList& b) {
  if (a.index() != b.index()) throw InputError("cannot concatenate gates of different families");
  return std::visit(
      [&](const auto& list) -> GateList {
        auto out = list;
        const auto& other = std::get<std::decay_t<decltype(list)>>(b);
        out.insert(out.end(), other.begin(), other.end());
        return out;
      },
      a);
}

GateList constant_one(Family family, int n, std::uint32_t p) {
  std::vector<Rational> zeros(static_cast<std::size_t>(n), Rational(0));
  switch (family) {
    case Family::thr: return std::vector<ThresholdGate>{ThresholdGate(zeros, 0)};
    case Family::ethr: return std::vector<ExactThresholdGate>{ExactThresholdGate(zeros, 0)};
    case Family::relu: return std::vector<ReluGate>{ReluGate(zeros, 1)};
    case Family::fp: {
      FpPolynomial one(p, n, 0);
      one.add_term(0, 1);
      return std::vector<FpPolynomial>{one};
    }
  }
  throw InputError("unknown family");
}

Normalized<ThresholdGate> normalize_integer(const ThresholdGate& g) {
  const Integer c = common_denominator(g.weights());
  return {ThresholdGate(scaled(g.weights(), c), Rational(ceil(g.threshold() * c))), c};
}

Normalized<ExactThresholdGate> normalize_integer(const ExactThresholdGate& g) {
  auto all = g.weights();
  all.push_back(g.target());
  const Integer c = common_denominator(all);
  return {ExactThresholdGate(scaled(g.weights(), c), g.target() * c), c};
}

Normalized<ReluGate> normalize_integer(const ReluGate& g) {
  auto all = g.weights();
  all.push_back(g.bias());
  const Integer c = common_denominator(all);
  return {ReluGate(scaled(g.weights(), c), g.bias() * c), c};
}

std::vector<Integer> integer_weights(const std::vector<Rational>& weights) {
  std::vector<Integer> out;
  out.reserve(weights.size());
  for (const auto& w : weights) {
    if (!is_integer(w)) throw InputError("expected integer weights; normalize the gate first");
    out.push_back(w.get_num());
  }
  return out;
}

}  // namespace hypersum
