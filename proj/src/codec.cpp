#include "syndist/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "syndist/errors.hpp"

namespace syndist {

void DistanceTuple::validate() const {
  const std::size_t n = words.size();
  if (n == 0) throw UsageError("distance tuple needs at least one word");
  if (tags.size() != n || unary_labels.size() != n)
    throw UsageError("tags/unary_labels must have one entry per word");
  if (distances.size() != n - 1 || split_labels.size() != n - 1)
    throw UsageError("distances/split_labels must have one entry per split point");
  for (double d : distances) {
    if (std::isnan(d)) throw UsageError("distance is NaN");
  }
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::kScan:
      return "scan";
    case Engine::kRmq:
      return "rmq";
    case Engine::kStack:
      return "stack";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "scan") return Engine::kScan;
  if (name == "rmq") return Engine::kRmq;
  if (name == "stack") return Engine::kStack;
  throw UsageError("unknown engine '" + std::string(name) + "' (expected scan, rmq or stack)");
}

SparseTable::SparseTable(std::span<const double> values) : values_(values.begin(), values.end()) {
  const std::size_t n = values_.size();
  if (n == 0) return;
  levels_.emplace_back(n);
  std::iota(levels_[0].begin(), levels_[0].end(), 0u);
  for (std::size_t width = 2; width <= n; width *= 2) {
    const auto& prev = levels_.back();
    std::vector<std::uint32_t> next(n - width + 1);
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = static_cast<std::uint32_t>(pick(prev[i], prev[i + half]));
    levels_.push_back(std::move(next));
  }
}

std::size_t SparseTable::range_argmax(std::size_t lo, std::size_t hi) const {
  if (lo >= hi || hi > values_.size())
    throw UsageError("range_argmax needs 0 <= lo < hi <= size");
  const auto k = static_cast<std::size_t>(std::bit_width(hi - lo) - 1);
  const auto& level = levels_[k];
  // Both blocks cover [lo, hi); the left one wins ties.
  return pick(level[lo], level[hi - (std::size_t{1} << k)]);
}

DistanceTuple encode(const BinaryTree& tree) {
  const std::size_t n = tree.size();
  DistanceTuple out;
  out.distances.reserve(n - 1);
  out.split_labels.reserve(n - 1);
  out.tags.reserve(n);
  out.words.reserve(n);
  out.unary_labels.reserve(n);

  // Post-order pass for heights: leaves are 0, internal = max(children) + 1.
  std::vector<int> height(n - 1, 0);
  auto height_of = [&](NodeRef r) { return r.terminal ? 0 : height[r.index]; };
  {
    std::vector<std::pair<NodeRef, bool>> stack{{tree.root(), false}};
    while (!stack.empty()) {
      auto [ref, expanded] = stack.back();
      stack.pop_back();
      if (ref.terminal) continue;
      const auto& node = tree.internal(ref.index);
      if (expanded) {
        height[ref.index] = std::max(height_of(node.left), height_of(node.right)) + 1;
      } else {
        stack.push_back({ref, true});
        stack.push_back({node.right, false});
        stack.push_back({node.left, false});
      }
    }
  }

  // In-order pass: d, c from internal nodes; t, w, u from leaves.
  std::vector<NodeRef> stack;
  NodeRef cur = tree.root();
  bool have = true;
  while (have || !stack.empty()) {
    while (have && !cur.terminal) {
      stack.push_back(cur);
      cur = tree.internal(cur.index).left;
    }
    if (have) {
      const auto& term = tree.terminal(cur.index);
      out.tags.push_back(term.tag);
      out.words.push_back(term.word);
      out.unary_labels.push_back(term.unary_label);
      have = false;
    }
    if (stack.empty()) break;
    NodeRef node = stack.back();
    stack.pop_back();
    out.distances.push_back(static_cast<double>(height[node.index]));
    out.split_labels.push_back(tree.internal(node.index).label);
    cur = tree.internal(node.index).right;
    have = true;
  }
  return out;
}

namespace {

std::vector<Terminal> terminals_of(const DistanceTuple& tuple) {
  std::vector<Terminal> terms;
  terms.reserve(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i)
    terms.push_back({tuple.words[i], tuple.tags[i], tuple.unary_labels[i]});
  return terms;
}

// Iterative top-down split over word ranges; `argmax(lo, hi)` returns the
// split to use among split points [lo, hi).
template <typename Argmax>
BinaryTree decode_top_down(const DistanceTuple& tuple, Argmax argmax) {
  tuple.validate();
  const auto n = static_cast<std::int32_t>(tuple.size());
  std::vector<Internal> internals(tuple.size() - 1);

  struct Frame {
    std::int32_t lo, hi;  // inclusive word range
    NodeRef* slot;
  };
  NodeRef root;
  std::vector<Frame> stack{{0, n - 1, &root}};
  while (!stack.empty()) {
    auto [lo, hi, slot] = stack.back();
    stack.pop_back();
    if (lo == hi) {
      *slot = {true, lo};
      continue;
    }
    const auto split = static_cast<std::int32_t>(argmax(lo, hi));
    *slot = {false, split};
    auto& node = internals[split];
    node.label = tuple.split_labels[split];
    stack.push_back({split + 1, hi, &node.right});
    stack.push_back({lo, split, &node.left});
  }
  return BinaryTree(terminals_of(tuple), std::move(internals), root);
}

}  // namespace

BinaryTree decode_scan(const DistanceTuple& tuple) {
  const auto& d = tuple.distances;
  return decode_top_down(tuple, [&d](std::int32_t lo, std::int32_t hi) {
    std::int32_t best = lo;
    for (std::int32_t i = lo + 1; i < hi; ++i) {
      if (d[i] > d[best]) best = i;
    }
    return best;
  });
}

BinaryTree decode_rmq(const DistanceTuple& tuple) {
  tuple.validate();
  const SparseTable table(tuple.distances);
  return decode_top_down(tuple, [&table](std::int32_t lo, std::int32_t hi) {
    return table.range_argmax(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
  });
}

BinaryTree decode_stack(const DistanceTuple& tuple) {
  tuple.validate();
  const auto& d = tuple.distances;
  const auto m = static_cast<std::int32_t>(d.size());
  if (m == 0) return BinaryTree(terminals_of(tuple), {}, {true, 0});

  std::vector<std::int32_t> left(m, -1), right(m, -1), stack;
  stack.reserve(m);
  for (std::int32_t i = 0; i < m; ++i) {
    std::int32_t last = -1;
    // Strict comparison keeps an earlier equal value as the ancestor.
    while (!stack.empty() && d[stack.back()] < d[i]) {
      last = stack.back();
      stack.pop_back();
    }
    left[i] = last;
    if (!stack.empty()) right[stack.back()] = i;
    stack.push_back(i);
  }

  std::vector<Internal> internals(m);
  for (std::int32_t i = 0; i < m; ++i) {
    internals[i].label = tuple.split_labels[i];
    internals[i].left = left[i] >= 0 ? NodeRef{false, left[i]} : NodeRef{true, i};
    internals[i].right = right[i] >= 0 ? NodeRef{false, right[i]} : NodeRef{true, i + 1};
  }
  return BinaryTree(terminals_of(tuple), std::move(internals), {false, stack.front()});
}

BinaryTree decode(const DistanceTuple& tuple, Engine engine) {
  switch (engine) {
    case Engine::kScan:
      return decode_scan(tuple);
    case Engine::kRmq:
      return decode_rmq(tuple);
    case Engine::kStack:
      return decode_stack(tuple);
  }
  throw UsageError("unknown engine");
}

std::vector<std::size_t> rank_signature(std::span<const double> distances) {
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return distances[a] > distances[b]; });
  return order;
}

}  // namespace syndist
