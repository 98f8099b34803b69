#include "hypersum/io.hpp"

#include <bit>
#include <fstream>
#include <set>
#include <sstream>

namespace hypersum {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  throw InputError(where + ": expected a rational string such as \"3\" or \"-1/2\"");
}

std::vector<Rational> rationals_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_of(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::int64_t integer_of(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::vector<Rational> weights_of(const json& gate, int n, const std::string& where) {
  auto w = rationals_of(field(gate, "weights", where), where + ".weights");
  if (static_cast<int>(w.size()) != n) {
    throw InputError(where + ": has " + std::to_string(w.size()) + " weights, expected n = " + std::to_string(n));
  }
  return w;
}

FpPolynomial polynomial_of(const json& gate, int n, std::uint32_t p, const std::string& where) {
  const json& monomials = field(gate, "monomials", where);
  if (!monomials.is_array()) throw InputError(where + ".monomials: expected an array");
  std::vector<std::pair<std::uint64_t, std::int64_t>> terms;
  int degree = 0;
  for (std::size_t t = 0; t < monomials.size(); ++t) {
    const std::string here = where + ".monomials[" + std::to_string(t) + "]";
    const json& vars = field(monomials[t], "vars", here);
    if (!vars.is_array()) throw InputError(here + ".vars: expected an array");
    std::uint64_t mask = 0;
    for (const auto& v : vars) {
      const auto i = integer_of(v, here + ".vars");
      if (i < 1 || i > n) throw InputError(here + ": variable " + std::to_string(i) + " outside 1.." + std::to_string(n));
      const std::uint64_t bit = std::uint64_t{1} << (i - 1);
      if (mask & bit) throw InputError(here + ": variable " + std::to_string(i) + " repeated");
      mask |= bit;
    }
    degree = std::max(degree, std::popcount(mask));
    terms.emplace_back(mask, integer_of(field(monomials[t], "coeff", here), here + ".coeff"));
  }
  if (gate.contains("degree")) {
    const auto d = integer_of(gate.at("degree"), where + ".degree");
    if (d < degree) throw InputError(where + ": degree bound below the degree of a monomial");
    degree = static_cast<int>(d);
  }
  FpPolynomial q(p, n, degree);
  for (const auto& [mask, coeff] : terms) q.add_term(mask, coeff);
  return q;
}

json rational_json(const Rational& r) { return format_rational(r); }

json weights_json(const std::vector<Rational>& w) {
  json out = json::array();
  for (const auto& v : w) out.push_back(rational_json(v));
  return out;
}

}  // namespace

CircuitDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw InputError("document must be a JSON object");
  const auto n64 = integer_of(field(doc, "n", "document"), "n");
  if (n64 < 1 || n64 > kMaxVariables) throw InputError("n must be between 1 and " + std::to_string(kMaxVariables));
  const int n = static_cast<int>(n64);
  const json& family_field = field(doc, "family", "document");
  if (!family_field.is_string()) throw InputError("family: expected a string");
  const Family family = parse_family(family_field.get<std::string>());
  const json& gates = field(doc, "gates", "document");
  if (!gates.is_array()) throw InputError("gates: expected an array");

  std::uint32_t p = 0;
  if (family == Family::fp) {
    const auto pv = integer_of(field(doc, "p", "document"), "p");
    if (pv < 2 || pv > 65521 || !is_prime(static_cast<std::uint64_t>(pv))) {
      throw InputError("p must be a prime below 65536");
    }
    p = static_cast<std::uint32_t>(pv);
  }

  CircuitDocument out;
  out.combination.n = n;
  switch (family) {
    case Family::thr: {
      std::vector<ThresholdGate> list;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string where = "gates[" + std::to_string(i) + "]";
        list.emplace_back(weights_of(gates[i], n, where),
                          rational_of(field(gates[i], "threshold", where), where + ".threshold"));
      }
      out.combination.gates = std::move(list);
      break;
    }
    case Family::ethr: {
      std::vector<ExactThresholdGate> list;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string where = "gates[" + std::to_string(i) + "]";
        list.emplace_back(weights_of(gates[i], n, where),
                          rational_of(field(gates[i], "threshold", where), where + ".threshold"));
      }
      out.combination.gates = std::move(list);
      break;
    }
    case Family::relu: {
      std::vector<ReluGate> list;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string where = "gates[" + std::to_string(i) + "]";
        list.emplace_back(weights_of(gates[i], n, where), rational_of(field(gates[i], "bias", where), where + ".bias"));
      }
      out.combination.gates = std::move(list);
      break;
    }
    case Family::fp: {
      std::vector<FpPolynomial> list;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        list.push_back(polynomial_of(gates[i], n, p, "gates[" + std::to_string(i) + "]"));
      }
      out.combination.gates = std::move(list);
      break;
    }
  }

  if (doc.contains("coefficients")) {
    out.combination.coefficients = rationals_of(doc.at("coefficients"), "coefficients");
  } else {
    out.combination.coefficients.assign(gates.size(), Rational(1));
  }
  out.combination.validate();

  if (doc.contains("targets")) {
    if (family != Family::fp) throw InputError("targets are only meaningful for the fp family");
    const json& t = doc.at("targets");
    if (!t.is_array() || t.size() != gates.size()) throw InputError("targets: expected one entry per polynomial");
    for (const auto& v : t) {
      const auto a = integer_of(v, "targets");
      if (a < 0 || a >= static_cast<std::int64_t>(p)) throw InputError("targets: entries must lie in [0, p)");
      out.targets.push_back(static_cast<std::uint32_t>(a));
    }
  } else {
    out.targets.assign(gates.size(), 0);
  }
  return out;
}

CircuitDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return parse_document(doc);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json to_json(const LinComb& c, const std::vector<std::uint32_t>& targets) {
  json doc;
  doc["n"] = c.n;
  doc["family"] = to_string(c.family());
  json coefficients = json::array();
  for (const auto& a : c.coefficients) coefficients.push_back(rational_json(a));
  doc["coefficients"] = coefficients;
  json gates = json::array();
  std::visit(
      [&](const auto& list) {
        using T = typename std::decay_t<decltype(list)>::value_type;
        for (const auto& g : list) {
          json gate;
          if constexpr (std::is_same_v<T, ThresholdGate>) {
            gate["weights"] = weights_json(g.weights());
            gate["threshold"] = rational_json(g.threshold());
          } else if constexpr (std::is_same_v<T, ExactThresholdGate>) {
            gate["weights"] = weights_json(g.weights());
            gate["threshold"] = rational_json(g.target());
          } else if constexpr (std::is_same_v<T, ReluGate>) {
            gate["weights"] = weights_json(g.weights());
            gate["bias"] = rational_json(g.bias());
          } else {
            doc["p"] = g.p();
            json monomials = json::array();
            for (const auto& [mask, coeff] : g.monomials()) {
              json vars = json::array();
              for (int i = 0; i < g.n(); ++i) {
                if ((mask >> i) & 1u) vars.push_back(i + 1);
              }
              monomials.push_back({{"vars", vars}, {"coeff", coeff}});
            }
            gate["monomials"] = monomials;
            gate["degree"] = g.degree_bound();
          }
          gates.push_back(gate);
        }
      },
      c.gates);
  doc["gates"] = gates;
  if (!targets.empty()) doc["targets"] = targets;
  return doc;
}

}  // namespace hypersum
