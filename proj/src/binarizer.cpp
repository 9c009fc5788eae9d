#include "syndist/binarizer.hpp"

#include <utility>

#include "syndist/errors.hpp"

namespace syndist {

BinaryTree BinaryTree::leaf(std::string word, std::string tag, std::string unary_label) {
  BinaryTree t;
  t.terminals_.push_back({std::move(word), std::move(tag), std::move(unary_label)});
  t.root_ = {true, 0};
  return t;
}

BinaryTree BinaryTree::join(std::string label, const BinaryTree& left, const BinaryTree& right) {
  const auto shift = static_cast<std::int32_t>(left.size());
  auto moved = [shift](NodeRef r) {
    r.index += shift;
    return r;
  };

  BinaryTree t;
  t.terminals_ = left.terminals_;
  t.terminals_.insert(t.terminals_.end(), right.terminals_.begin(), right.terminals_.end());
  t.internals_ = left.internals_;
  t.internals_.push_back({std::move(label), left.root_, moved(right.root_)});
  for (const auto& node : right.internals_)
    t.internals_.push_back({node.label, moved(node.left), moved(node.right)});
  t.root_ = {false, shift - 1};
  return t;
}

BinaryTree::BinaryTree(std::vector<Terminal> terminals, std::vector<Internal> internals,
                       NodeRef root)
    : terminals_(std::move(terminals)), internals_(std::move(internals)), root_(root) {
  validate();
}

void BinaryTree::validate() const {
  if (terminals_.empty()) throw UsageError("binary tree needs at least one terminal");
  if (internals_.size() + 1 != terminals_.size())
    throw UsageError("binary tree over n words needs n-1 internal nodes");

  struct Frame {
    NodeRef ref;
    std::int32_t lo, hi;  // inclusive word range the node must cover
  };
  std::vector<Frame> stack{{root_, 0, static_cast<std::int32_t>(terminals_.size()) - 1}};
  while (!stack.empty()) {
    auto [ref, lo, hi] = stack.back();
    stack.pop_back();
    if (ref.terminal) {
      if (ref.index != lo || lo != hi) throw UsageError("terminal out of canonical position");
      continue;
    }
    if (ref.index < lo || ref.index >= hi) throw UsageError("internal node out of canonical position");
    const auto& node = internals_[ref.index];
    stack.push_back({node.left, lo, ref.index});
    stack.push_back({node.right, ref.index + 1, hi});
  }
}

std::vector<std::string> split_chain(std::string_view label) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = label.find(kChainSeparator, start);
    parts.emplace_back(label.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

namespace {

void check_label(const std::string& label) {
  if (label.empty()) throw EncodingError("empty constituent label");
  if (label == kEmptyLabel) throw EncodingError("constituent label collides with the empty label");
  if (label.find(kChainSeparator) != std::string::npos)
    throw EncodingError("label '" + label + "' contains the chain separator");
}

class Binarizer {
 public:
  BinaryTree run(const NaryTree& tree) {
    NodeRef root = build(tree);
    return BinaryTree(std::move(terminals_), std::move(internals_), root);
  }

 private:
  NodeRef add_terminal(const NaryTree& leaf, std::string unary) {
    if (leaf.word.empty() || leaf.label.empty()) throw EncodingError("leaf needs a word and a tag");
    terminals_.push_back({leaf.word, leaf.label, std::move(unary)});
    return {true, static_cast<std::int32_t>(terminals_.size()) - 1};
  }

  NodeRef build(const NaryTree& t) {
    if (t.is_leaf()) return add_terminal(t, std::string(kEmptyLabel));

    std::string chain;
    const NaryTree* cur = &t;
    for (;;) {
      check_label(cur->label);
      if (!chain.empty()) chain += kChainSeparator;
      chain += cur->label;
      if (cur->children.size() != 1 || cur->children.front().is_leaf()) break;
      cur = &cur->children.front();
    }
    if (cur->children.size() == 1) return add_terminal(cur->children.front(), std::move(chain));

    const auto& kids = cur->children;
    std::vector<NodeRef> refs;
    std::vector<std::int32_t> last_word;
    refs.reserve(kids.size());
    last_word.reserve(kids.size());
    for (const auto& child : kids) {
      refs.push_back(build(child));
      last_word.push_back(static_cast<std::int32_t>(terminals_.size()) - 1);
    }
    // Leftmost split point: c0 | (c1 | (c2 | ...)), introduced nodes get the empty label.
    if (internals_.size() < terminals_.size() - 1) internals_.resize(terminals_.size() - 1);
    NodeRef right = refs.back();
    for (std::size_t j = kids.size() - 1; j-- > 0;) {
      const std::int32_t split = last_word[j];
      internals_[split] = {j == 0 ? chain : std::string(kEmptyLabel), refs[j], right};
      right = {false, split};
    }
    return right;
  }

  std::vector<Terminal> terminals_;
  std::vector<Internal> internals_;
};

class Debinarizer {
 public:
  explicit Debinarizer(const BinaryTree& tree) : tree_(tree) {}

  NaryTree run() {
    const NodeRef root = tree_.root();
    if (!root.terminal && tree_.internal(root.index).label == kEmptyLabel)
      throw StructureError("root carries the empty label and has no parent to splice into");
    return convert(root);
  }

 private:
  static NaryTree wrap(const std::string& chain, NaryTree bottom_children_owner,
                       bool bottom_is_node) {
    auto labels = split_chain(chain);
    for (const auto& l : labels) {
      if (l.empty() || l == kEmptyLabel)
        throw StructureError("malformed unary chain label '" + chain + "'");
    }
    NaryTree cur = std::move(bottom_children_owner);
    std::size_t i = labels.size();
    if (bottom_is_node) cur.label = labels[--i];
    while (i-- > 0) {
      std::vector<NaryTree> kids;
      kids.push_back(std::move(cur));
      cur = NaryTree::node(labels[i], std::move(kids));
    }
    return cur;
  }

  void expand(NodeRef ref, std::vector<NaryTree>& out) {
    if (!ref.terminal) {
      const auto& node = tree_.internal(ref.index);
      if (node.label == kEmptyLabel) {
        expand(node.left, out);
        expand(node.right, out);
        return;
      }
    }
    out.push_back(convert(ref));
  }

  NaryTree convert(NodeRef ref) {
    if (ref.terminal) {
      const auto& term = tree_.terminal(ref.index);
      NaryTree leaf = NaryTree::leaf(term.tag, term.word);
      if (term.unary_label == kEmptyLabel) return leaf;
      return wrap(term.unary_label, std::move(leaf), false);
    }
    const auto& node = tree_.internal(ref.index);
    NaryTree bottom;
    expand(node.left, bottom.children);
    expand(node.right, bottom.children);
    return wrap(node.label, std::move(bottom), true);
  }

  const BinaryTree& tree_;
};

void render(const BinaryTree& t, NodeRef ref, std::string& out) {
  if (ref.terminal) {
    const auto& term = t.terminal(ref.index);
    const bool chain = term.unary_label != kEmptyLabel;
    if (chain) out += "(" + term.unary_label + " ";
    out += "(" + term.tag + " " + term.word + ")";
    if (chain) out += ")";
    return;
  }
  const auto& node = t.internal(ref.index);
  out += "(" + node.label + " ";
  render(t, node.left, out);
  out += " ";
  render(t, node.right, out);
  out += ")";
}

}  // namespace

BinaryTree binarize(const NaryTree& tree) { return Binarizer().run(tree); }

NaryTree debinarize(const BinaryTree& tree) { return Debinarizer(tree).run(); }

std::string to_bracketed(const BinaryTree& tree) {
  std::string out;
  render(tree, tree.root(), out);
  return out;
}

}  // namespace syndist
