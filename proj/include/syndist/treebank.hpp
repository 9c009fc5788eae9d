#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syndist {

/// Penn-style n-ary constituency tree.
///
/// A node without children is a leaf (preterminal): `label` holds its POS tag
/// and `word` the token. Internal nodes have at least one child and an empty
/// `word`.
struct NaryTree {
  std::string label;
  std::string word;
  std::vector<NaryTree> children;

  static NaryTree leaf(std::string tag, std::string word);
  static NaryTree node(std::string label, std::vector<NaryTree> children);

  bool is_leaf() const noexcept { return children.empty(); }

  /// Number of leaves below (and including) this node.
  std::size_t leaf_count() const;

  /// Leaves in sentence order.
  std::vector<const NaryTree*> leaves() const;

  friend bool operator==(const NaryTree&, const NaryTree&) = default;
};

/// Reads every top-level s-expression in `text`. An unlabeled outer wrapper
/// `( ... )` around a single tree is removed. Throws ParseError on unbalanced
/// parentheses and FormatError on malformed preterminals.
std::vector<NaryTree> parse_bracketed(std::string_view text);

/// Canonical single-line bracketing, e.g. `(S (NP (PRP She)) (VP (VBZ runs)))`.
std::string serialize_bracketed(const NaryTree& tree);

/// Drops `-NONE-` leaves and nodes left without children, then strips
/// functional annotations from nonterminal labels (`NP-SBJ-1` -> `NP`).
/// Returns nullopt when nothing survives.
std::optional<NaryTree> preprocess(const NaryTree& tree);

/// `NP-SBJ=2` -> `NP`; labels starting with `-` (`-LRB-`) are kept intact.
std::string strip_function_tags(std::string_view label);

}  // namespace syndist
