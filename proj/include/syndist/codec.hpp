#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syndist/binarizer.hpp"

namespace syndist {

/// Flat representation of a binary tree over n words: one distance and one
/// label per split point (n-1 each), plus the per-word fields.
///
/// Only the ranking of `distances` carries structure; any vector with the
/// same ranking decodes to the same tree.
struct DistanceTuple {
  std::vector<double> distances;
  std::vector<std::string> split_labels;
  std::vector<std::string> tags;
  std::vector<std::string> words;
  std::vector<std::string> unary_labels;

  std::size_t size() const noexcept { return words.size(); }

  /// Throws UsageError on length mismatches, n == 0, or NaN distances.
  void validate() const;

  friend bool operator==(const DistanceTuple&, const DistanceTuple&) = default;
};

enum class Engine { kScan, kRmq, kStack };

std::string_view engine_name(Engine engine);
Engine parse_engine(std::string_view name);

/// Range-argmax over a fixed vector: O(n log n) build, O(1) query.
class SparseTable {
 public:
  explicit SparseTable(std::span<const double> values);

  /// Leftmost index of the maximum of values[lo, hi). Throws UsageError when
  /// the range is empty or out of bounds.
  std::size_t range_argmax(std::size_t lo, std::size_t hi) const;

  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::size_t pick(std::uint32_t a, std::uint32_t b) const {
    return values_[b] > values_[a] ? b : a;
  }

  std::vector<double> values_;
  std::vector<std::vector<std::uint32_t>> levels_;  // levels_[k][i]: argmax of [i, i + 2^k)
};

/// Heights of internal nodes in order, with labels and per-word fields.
DistanceTuple encode(const BinaryTree& tree);

/// Top-down reconstruction: split each range at its leftmost maximum.
/// All engines return identical trees.
BinaryTree decode(const DistanceTuple& tuple, Engine engine = Engine::kRmq);

BinaryTree decode_scan(const DistanceTuple& tuple);
BinaryTree decode_rmq(const DistanceTuple& tuple);

/// Linear-time max-Cartesian-tree construction with a monotonic stack.
BinaryTree decode_stack(const DistanceTuple& tuple);

/// Split indices ordered by decreasing distance, ties by increasing index.
std::vector<std::size_t> rank_signature(std::span<const double> distances);

}  // namespace syndist
