#include "hypersum/mitm.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

namespace hypersum {

namespace {

// Below this many low bits the partial-sum table is filled serially.
constexpr int kSerialBits = 10;

const Integer& machine_limit() {
  static const Integer limit(std::numeric_limits<std::int64_t>::max() / 4);
  return limit;
}

template <class Key>
Key to_key(const Integer& v) {
  if constexpr (std::is_same_v<Key, std::int64_t>) {
    return v.get_si();
  } else {
    return v;
  }
}

template <class Key>
std::vector<Key> to_keys(const std::vector<Integer>& values) {
  std::vector<Key> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_key<Key>(v));
  return out;
}

Integer abs_sum(const std::vector<Integer>& values) {
  Integer s = 0;
  for (const auto& v : values) s += abs(v);
  return s;
}

struct Split {
  std::size_t first;
  std::size_t second;
};

Split split(std::size_t n) { return {(n + 1) / 2, n / 2}; }

void record(MitmStats* stats, const Split& s) {
  if (stats != nullptr) {
    stats->partials_enumerated += (std::uint64_t{1} << s.first) + (std::uint64_t{1} << s.second);
  }
}

template <class T>
std::vector<T> slice(const std::vector<T>& v, std::size_t from, std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + count)};
}

}  // namespace

template <class Key, class Value>
std::size_t HalfTable<Key, Value>::find(const Key& key) const {
  const auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return keys.size();
  return static_cast<std::size_t>(it - keys.begin());
}

template <class Key>
std::vector<Key> enumerate_partial_sums_serial(const std::vector<Key>& weights) {
  const std::size_t total = std::size_t{1} << weights.size();
  std::vector<Key> sums(total, Key(0));
  for (std::size_t mask = 1; mask < total; ++mask) {
    sums[mask] = sums[mask & (mask - 1)] + weights[static_cast<std::size_t>(std::countr_zero(mask))];
  }
  return sums;
}

template <class Key>
std::vector<Key> enumerate_partial_sums(const std::vector<Key>& weights) {
  const std::size_t h = weights.size();
  if (h <= static_cast<std::size_t>(kSerialBits)) return enumerate_partial_sums_serial(weights);
  const std::size_t low_bits = kSerialBits;
  const auto low = enumerate_partial_sums_serial(slice(weights, 0, low_bits));
  const auto high = enumerate_partial_sums_serial(slice(weights, low_bits, h - low_bits));
  const std::size_t low_size = low.size();
  std::vector<Key> sums(std::size_t{1} << h);
  const auto blocks = static_cast<std::int64_t>(high.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t hi = 0; hi < blocks; ++hi) {
    const Key& base = high[static_cast<std::size_t>(hi)];
    Key* out = sums.data() + static_cast<std::size_t>(hi) * low_size;
    for (std::size_t lo = 0; lo < low_size; ++lo) out[lo] = base + low[lo];
  }
  return sums;
}

template <class Key>
HalfTable<Key, std::uint64_t> aggregate_counts(std::vector<Key> sums) {
  std::sort(sums.begin(), sums.end());
  HalfTable<Key, std::uint64_t> table;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    table.keys.push_back(sums[i]);
    table.values.push_back(j - i);
    i = j;
  }
  return table;
}

template struct HalfTable<std::int64_t, std::uint64_t>;
template struct HalfTable<Integer, std::uint64_t>;
template struct HalfTable<std::int64_t, Integer>;
template struct HalfTable<Integer, Integer>;
template std::vector<std::int64_t> enumerate_partial_sums(const std::vector<std::int64_t>&);
template std::vector<Integer> enumerate_partial_sums(const std::vector<Integer>&);
template std::vector<std::int64_t> enumerate_partial_sums_serial(const std::vector<std::int64_t>&);
template std::vector<Integer> enumerate_partial_sums_serial(const std::vector<Integer>&);
template HalfTable<std::int64_t, std::uint64_t> aggregate_counts(std::vector<std::int64_t>);
template HalfTable<Integer, std::uint64_t> aggregate_counts(std::vector<Integer>);

namespace detail {

// Walks the first table upward and the second downward looking for pairs
// whose keys add up to `target`.
template <class Key, class Value, class Visit>
void for_each_match(const HalfTable<Key, Value>& first, const HalfTable<Key, Value>& second, const Key& target,
                    Visit&& visit) {
  if (first.size() == 0 || second.size() == 0) return;
  if (target < first.keys.front() + second.keys.front() || target > first.keys.back() + second.keys.back()) return;
  std::size_t j = second.size();
  for (std::size_t i = 0; i < first.size() && j > 0; ++i) {
    const Key want = target - first.keys[i];
    while (j > 0 && second.keys[j - 1] > want) --j;
    if (j > 0 && second.keys[j - 1] == want) visit(i, j - 1);
  }
}

template <class Key>
std::uint64_t CountTables<Key>::count(const Key& target) const {
  std::uint64_t total = 0;
  for_each_match(first, second, target,
                 [&](std::size_t i, std::size_t j) { total += first.values[i] * second.values[j]; });
  return total;
}

template <class Key>
Integer AffineTables<Key>::sum(const Key& target) const {
  Integer total = 0;
  for_each_match(first, second, target, [&](std::size_t i, std::size_t j) {
    const auto a = first.payload(i);
    const auto b = second.payload(j);
    for (std::size_t t = 0; t < subsets; ++t) total += a[t] * b[t];
  });
  return total;
}

template struct CountTables<std::int64_t>;
template struct CountTables<Integer>;
template struct AffineTables<std::int64_t>;
template struct AffineTables<Integer>;

}  // namespace detail

SubsetSumIndex::SubsetSumIndex(const std::vector<Integer>& weights, MitmStats* stats)
    : n_(static_cast<int>(weights.size())), bound_(abs_sum(weights)) {
  if (weights.empty() || weights.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw InputError("subset-sum instance needs between 1 and " + std::to_string(kMaxVariables) + " weights");
  }
  const Split s = split(weights.size());
  auto build = [&](auto key_tag) {
    using Key = decltype(key_tag);
    const auto keys = to_keys<Key>(weights);
    detail::CountTables<Key> t;
    t.first = aggregate_counts(enumerate_partial_sums(slice(keys, 0, s.first)));
    t.second = aggregate_counts(enumerate_partial_sums(slice(keys, s.first, s.second)));
    return t;
  };
  if (bound_ < machine_limit()) {
    tables_ = build(std::int64_t{});
  } else {
    tables_ = build(Integer{});
  }
  record(stats, s);
}

std::uint64_t SubsetSumIndex::count(const Integer& target) const {
  if (abs(target) > bound_) return 0;
  return std::visit(
      [&](const auto& t) {
        using Key = std::decay_t<decltype(t.first.keys)>::value_type;
        return t.count(to_key<Key>(target));
      },
      tables_);
}

Integer count_subset_sum(const std::vector<Integer>& weights, const Integer& target, MitmStats* stats) {
  const SubsetSumIndex index(weights, stats);
  return Integer(std::to_string(index.count(target)));
}

namespace {

struct IntegerAffine {
  std::vector<Integer> weights;
  Integer bias;
};

// Builds one aggregated half. `offset`/`count` select the variables, and the
// biases are included only in the first half.
template <class Key>
HalfTable<Key, Integer> build_affine_half(const std::vector<Key>& key_weights, const std::vector<IntegerAffine>& forms,
                                          std::size_t offset, std::size_t count, bool first_half) {
  const std::size_t k = forms.size();
  const std::size_t subsets = std::size_t{1} << k;
  const std::size_t full = subsets - 1;
  const auto keys = enumerate_partial_sums(slice(key_weights, offset, count));
  std::vector<std::vector<Integer>> partial(k);
  for (std::size_t j = 0; j < k; ++j) partial[j] = enumerate_partial_sums(slice(forms[j].weights, offset, count));

  const std::size_t points = keys.size();
  std::vector<Integer> payload(points * subsets);
#pragma omp parallel
  {
    std::vector<Integer> value(k);
    std::vector<Integer> prod(subsets);
#pragma omp for schedule(static)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(points); ++m) {
      const auto mask = static_cast<std::size_t>(m);
      for (std::size_t j = 0; j < k; ++j) {
        value[j] = partial[j][mask];
        if (first_half) value[j] += forms[j].bias;
      }
      prod[0] = 1;
      for (std::size_t t = 1; t < subsets; ++t) {
        prod[t] = prod[t & (t - 1)] * value[static_cast<std::size_t>(std::countr_zero(t))];
      }
      Integer* out = payload.data() + mask * subsets;
      for (std::size_t t = 0; t < subsets; ++t) out[t] = first_half ? prod[t] : prod[full ^ t];
    }
  }

  std::vector<std::size_t> order(points);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  HalfTable<Key, Integer> table;
  table.width = subsets;
  for (std::size_t i = 0; i < points;) {
    const Key& key = keys[order[i]];
    table.keys.push_back(key);
    const std::size_t base = table.values.size();
    table.values.resize(base + subsets, Integer(0));
    for (; i < points && keys[order[i]] == key; ++i) {
      const Integer* src = payload.data() + order[i] * subsets;
      for (std::size_t t = 0; t < subsets; ++t) table.values[base + t] += src[t];
    }
  }
  return table;
}

}  // namespace

AffineSumIndex::AffineSumIndex(const std::vector<Integer>& key_weights, const std::vector<AffineForm>& affines,
                               MitmStats* stats)
    : n_(static_cast<int>(key_weights.size())), bound_(abs_sum(key_weights)), denominator_(1) {
  if (key_weights.empty() || key_weights.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw InputError("weighted sum needs between 1 and " + std::to_string(kMaxVariables) + " variables");
  }
  if (affines.size() > 16) throw InputError("at most 16 affine factors are supported");
  std::vector<IntegerAffine> forms;
  for (const auto& a : affines) {
    if (a.weights.size() != key_weights.size()) throw InputError("affine form has the wrong number of weights");
    auto all = a.weights;
    all.push_back(a.bias);
    const Integer d = common_denominator(all);
    IntegerAffine f;
    for (const auto& w : a.weights) f.weights.push_back(Rational(w * d).get_num());
    f.bias = Rational(a.bias * d).get_num();
    forms.push_back(std::move(f));
    denominator_ *= d;
  }
  const Split s = split(key_weights.size());
  auto build = [&](auto key_tag) {
    using Key = decltype(key_tag);
    const auto keys = to_keys<Key>(key_weights);
    detail::AffineTables<Key> t;
    t.subsets = std::size_t{1} << forms.size();
    t.first = build_affine_half(keys, forms, 0, s.first, true);
    t.second = build_affine_half(keys, forms, s.first, s.second, false);
    return t;
  };
  if (bound_ < machine_limit()) {
    tables_ = build(std::int64_t{});
  } else {
    tables_ = build(Integer{});
  }
  record(stats, s);
}

Rational AffineSumIndex::sum(const Integer& target) const {
  if (abs(target) > bound_) return 0;
  const Integer total = std::visit(
      [&](const auto& t) {
        using Key = std::decay_t<decltype(t.first.keys)>::value_type;
        return t.sum(to_key<Key>(target));
      },
      tables_);
  Rational r(total, denominator_);
  r.canonicalize();
  return r;
}

Rational weighted_ethr_affine_sum(const ExactThresholdGate& g, const std::vector<AffineForm>& affines,
                                  MitmStats* stats) {
  const auto normalized = normalize_integer(g);
  const AffineSumIndex index(integer_weights(normalized.gate.weights()), affines, stats);
  return index.sum(normalized.gate.target().get_num());
}

}  // namespace hypersum
