#pragma once

// Meet-in-the-middle kernels over {0,1}^n.
//
// Variables are split into a first half x_1..x_h (h = ceil(n/2)) and a
// second half x_{h+1}..x_n. Each half is enumerated once, partial
// assignments are aggregated by the partial sum of the key weights into a
// HalfTable, and queries match keys from both tables.

#include <atomic>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hypersum/core.hpp"
#include "hypersum/gates.hpp"

namespace hypersum {

/// Counts partial assignments enumerated by the kernels; each index build
/// over n variables adds exactly 2^ceil(n/2) + 2^floor(n/2).
struct MitmStats {
  std::atomic<std::uint64_t> partials_enumerated{0};
};

/// Sorted, key-aggregated table. Entry i has key keys[i] and payload
/// values[i*width .. (i+1)*width), the componentwise sum over every partial
/// assignment with that key. Keys are strictly increasing.
template <class Key, class Value>
struct HalfTable {
  std::size_t width = 1;
  std::vector<Key> keys;
  std::vector<Value> values;

  std::size_t size() const { return keys.size(); }
  std::span<const Value> payload(std::size_t i) const { return {values.data() + i * width, width}; }
  /// Index of `key`, or size() when absent. Binary search.
  std::size_t find(const Key& key) const;
};

/// sums[mask] = sum_{i in mask} weights[i], for every mask of the given
/// weights. OpenMP-parallel over high bits.
template <class Key>
std::vector<Key> enumerate_partial_sums(const std::vector<Key>& weights);

/// Serial reference for enumerate_partial_sums.
template <class Key>
std::vector<Key> enumerate_partial_sums_serial(const std::vector<Key>& weights);

/// Groups equal sums; payload is the multiplicity.
template <class Key>
HalfTable<Key, std::uint64_t> aggregate_counts(std::vector<Key> sums);

namespace detail {

template <class Key>
struct CountTables {
  HalfTable<Key, std::uint64_t> first;
  HalfTable<Key, std::uint64_t> second;
  std::uint64_t count(const Key& target) const;
};

template <class Key>
struct AffineTables {
  std::size_t subsets = 1;  // 2^k
  HalfTable<Key, Integer> first;
  HalfTable<Key, Integer> second;
  Integer sum(const Key& target) const;
};

}  // namespace detail

/// Prepared #SubsetSum instance: one weight vector, any number of targets.
class SubsetSumIndex {
 public:
  explicit SubsetSumIndex(const std::vector<Integer>& weights, MitmStats* stats = nullptr);

  /// |{x : <weights, x> = target}|
  std::uint64_t count(const Integer& target) const;
  int n() const { return n_; }
  /// True when keys are held in machine words.
  bool compact() const { return std::holds_alternative<detail::CountTables<std::int64_t>>(tables_); }

 private:
  int n_;
  Integer bound_;  // max |<weights, x>|
  std::variant<detail::CountTables<std::int64_t>, detail::CountTables<Integer>> tables_;
};

/// |{x in {0,1}^n : <weights, x> = target}| by split-and-list.
Integer count_subset_sum(const std::vector<Integer>& weights, const Integer& target, MitmStats* stats = nullptr);

/// <w, x> + bias with rational entries.
struct AffineForm {
  std::vector<Rational> weights;
  Rational bias;
};

/// Prepared weighted sum: sum over {x : <key_weights, x> = target} of
/// prod_j (<w_j, x> + a_j), for any target. The product is expanded over
/// subsets T of the k forms: the first half carries prod_{j in T} of its
/// partial values (biases folded in), the second half prod_{j not in T}.
class AffineSumIndex {
 public:
  AffineSumIndex(const std::vector<Integer>& key_weights, const std::vector<AffineForm>& affines,
                 MitmStats* stats = nullptr);

  Rational sum(const Integer& target) const;
  int n() const { return n_; }

 private:
  int n_;
  Integer bound_;
  Integer denominator_;  // product of the forms' common denominators
  std::variant<detail::AffineTables<std::int64_t>, detail::AffineTables<Integer>> tables_;
};

/// sum_{x : g(x) = 1} prod_j (<w_j, x> + a_j). Rational gate weights are
/// normalized first.
Rational weighted_ethr_affine_sum(const ExactThresholdGate& g, const std::vector<AffineForm>& affines,
                                  MitmStats* stats = nullptr);

}  // namespace hypersum
