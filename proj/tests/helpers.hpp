#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "hypersum/gates.hpp"

namespace hypersum::test {

inline Rational R(const std::string& s) { return parse_rational(s); }
inline Rational R(long v) { return Rational(v); }

inline std::vector<Rational> W(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(parse_rational(v));
  return out;
}

inline std::vector<Rational> W(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline std::vector<Integer> Z(std::initializer_list<long> values) {
  std::vector<Integer> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline ThresholdGate thr(std::initializer_list<long> w, long t) { return {W(w), Rational(t)}; }
inline ExactThresholdGate ethr(std::initializer_list<long> w, long t) { return {W(w), Rational(t)}; }
inline ReluGate relu(std::initializer_list<long> w, long a) { return {W(w), Rational(a)}; }

inline Assignment X(std::initializer_list<int> bits) { return Assignment::from_values(std::vector<int>(bits)); }

// x1 OR x2 by inclusion-exclusion.
inline LinComb or_combination() {
  return {2, W({1L, 1L, -1L}), std::vector<ThresholdGate>{thr({1, 0}, 1), thr({0, 1}, 1), thr({1, 1}, 2)}};
}

}  // namespace hypersum::test
