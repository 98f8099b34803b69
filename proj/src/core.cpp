#include "hypersum/core.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

namespace hypersum {

Assignment::Assignment(std::uint64_t bits_, int n_) : bits(bits_), n(n_) {
  if (n < 0 || n > kMaxVariables) {
    throw InputError("assignment length " + std::to_string(n) + " out of range");
  }
  if (n < 64 && (bits >> n) != 0) {
    throw InputError("assignment has bits set beyond its length");
  }
}

Assignment Assignment::from_values(const std::vector<int>& values) {
  if (values.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw InputError("too many variables in assignment");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0 && values[i] != 1) {
      throw InputError("assignment entries must be 0 or 1");
    }
    if (values[i]) bits |= std::uint64_t{1} << i;
  }
  return {bits, static_cast<int>(values.size())};
}

std::string Assignment::to_string() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

namespace {

void read_env(const char* name, auto& field) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value, &end, 10);
  if (end == value || *end != '\0') {
    throw InputError(std::string("environment variable ") + name + " is not a non-negative integer");
  }
  field = static_cast<std::remove_reference_t<decltype(field)>>(parsed);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  read_env("HYPERSUM_CAP_ORACLE_N", limits.oracle_max_vars);
  read_env("HYPERSUM_CAP_TERMS", limits.max_decomposition_terms);
  read_env("HYPERSUM_CAP_TUPLES", limits.max_tuples);
  read_env("HYPERSUM_CAP_DENSE_N", limits.max_dense_vars);
  return limits;
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Rational value;
  if (slash == std::string_view::npos) {
    value = Rational(Integer(std::string(num)));
  } else {
    Integer d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
    value.canonicalize();
  }
  if (text.front() == '-') value = -value;
  return value;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer common_denominator(const std::vector<Rational>& values) {
  Integer lcm = 1;
  for (const auto& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  return lcm;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer power_of_two(int exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return r;
}

}  // namespace hypersum
