#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "syndist/treebank.hpp"

namespace syndist {

/// Label of spans introduced by binarization, and of words that are not the
/// only child of a unary chain.
inline constexpr std::string_view kEmptyLabel = "\xE2\x88\x85";  // U+2205

/// Joins the elements of a collapsed unary chain, outermost first.
inline constexpr char kChainSeparator = '+';

/// Reference to a node of a BinaryTree: either a terminal (by word position)
/// or an internal node (by split position).
struct NodeRef {
  bool terminal = true;
  std::int32_t index = 0;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct Terminal {
  std::string word;
  std::string tag;
  std::string unary_label;  // collapsed chain above the preterminal, or kEmptyLabel

  friend bool operator==(const Terminal&, const Terminal&) = default;
};

struct Internal {
  std::string label;  // constituent label, collapsed chain, or kEmptyLabel
  NodeRef left;
  NodeRef right;

  friend bool operator==(const Internal&, const Internal&) = default;
};

/// Strictly binary labeled tree in canonical form.
///
/// A tree over n words has n terminals and n-1 internal nodes. Internal node
/// `i` is the one whose split falls between words i and i+1, so internal
/// nodes are stored in in-order sequence and structural equality reduces to
/// member-wise equality.
class BinaryTree {
 public:
  BinaryTree() = default;

  static BinaryTree leaf(std::string word, std::string tag,
                         std::string unary_label = std::string(kEmptyLabel));
  static BinaryTree join(std::string label, const BinaryTree& left, const BinaryTree& right);

  /// Takes ownership of pre-built canonical arrays. Throws UsageError when the
  /// arrays do not describe a canonical binary tree.
  BinaryTree(std::vector<Terminal> terminals, std::vector<Internal> internals, NodeRef root);

  std::size_t size() const noexcept { return terminals_.size(); }
  const std::vector<Terminal>& terminals() const noexcept { return terminals_; }
  const std::vector<Internal>& internals() const noexcept { return internals_; }
  NodeRef root() const noexcept { return root_; }

  const Terminal& terminal(std::int32_t i) const { return terminals_.at(i); }
  const Internal& internal(std::int32_t i) const { return internals_.at(i); }

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  void validate() const;

  std::vector<Terminal> terminals_;
  std::vector<Internal> internals_;
  NodeRef root_;
};

/// Leftmost binarization with unary-chain collapsing. Throws EncodingError on
/// labels that contain the chain separator or equal the empty label.
BinaryTree binarize(const NaryTree& tree);

/// Inverse of binarize: splices out empty-labeled nodes and expands chains.
/// Throws StructureError when the root carries the empty label.
NaryTree debinarize(const BinaryTree& tree);

/// Debug rendering, e.g. `(NP (DT a) (∅ (JJ b) (NN c)))`; terminals with a
/// unary label print as `(S+VP (VB go))`.
std::string to_bracketed(const BinaryTree& tree);

std::vector<std::string> split_chain(std::string_view label);

}  // namespace syndist
