#include "syndist/treebank.hpp"

#include <cctype>

#include "syndist/errors.hpp"

namespace syndist {

NaryTree NaryTree::leaf(std::string tag, std::string word) {
  NaryTree t;
  t.label = std::move(tag);
  t.word = std::move(word);
  return t;
}

NaryTree NaryTree::node(std::string label, std::vector<NaryTree> children) {
  NaryTree t;
  t.label = std::move(label);
  t.children = std::move(children);
  return t;
}

std::size_t NaryTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

namespace {

void collect_leaves(const NaryTree& t, std::vector<const NaryTree*>& out) {
  if (t.is_leaf()) {
    out.push_back(&t);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<NaryTree> read_all() {
    std::vector<NaryTree> trees;
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '(') throw ParseError("expected '('", pos_);
      std::size_t start = pos_;
      auto tree = read_node();
      if (!tree) throw FormatError("empty tree at byte " + std::to_string(start));
      trees.push_back(std::move(*tree));
    }
    return trees;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Reads one '(' ... ')' group. Returns nullopt for the degenerate "()".
  std::optional<NaryTree> read_node() {
    const std::size_t open = pos_;
    ++pos_;  // '('
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unbalanced '('", open);

    std::string label;
    if (text_[pos_] != '(' && text_[pos_] != ')') label = std::string(read_atom());

    std::vector<NaryTree> children;
    std::vector<std::string_view> tokens;
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) throw ParseError("unbalanced '('", open);
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        auto child = read_node();
        if (!child) throw FormatError("empty subtree at byte " + std::to_string(open));
        children.push_back(std::move(*child));
      } else {
        tokens.push_back(read_atom());
      }
    }

    if (label.empty()) {
      if (!tokens.empty())
        throw FormatError("unlabeled node with bare tokens at byte " + std::to_string(open));
      if (children.empty()) return std::nullopt;
      if (children.size() != 1)
        throw FormatError("unlabeled node with several children at byte " +
                          std::to_string(open));
      return std::move(children.front());
    }
    if (!tokens.empty()) {
      if (!children.empty() || tokens.size() != 1)
        throw FormatError("preterminal '" + label + "' must hold exactly one token at byte " +
                          std::to_string(open));
      return NaryTree::leaf(std::move(label), std::string(tokens.front()));
    }
    if (children.empty())
      throw FormatError("preterminal '" + label + "' has no token at byte " +
                        std::to_string(open));
    return NaryTree::node(std::move(label), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write(const NaryTree& t, std::string& out) {
  out += '(';
  out += t.label;
  if (t.is_leaf()) {
    out += ' ';
    out += t.word;
  } else {
    for (const auto& c : t.children) {
      out += ' ';
      write(c, out);
    }
  }
  out += ')';
}

std::optional<NaryTree> strip(const NaryTree& t) {
  if (t.is_leaf()) {
    if (t.label == "-NONE-") return std::nullopt;
    return t;
  }
  std::vector<NaryTree> kept;
  kept.reserve(t.children.size());
  for (const auto& c : t.children) {
    if (auto s = strip(c)) kept.push_back(std::move(*s));
  }
  if (kept.empty()) return std::nullopt;
  return NaryTree::node(strip_function_tags(t.label), std::move(kept));
}

}  // namespace

std::vector<const NaryTree*> NaryTree::leaves() const {
  std::vector<const NaryTree*> out;
  collect_leaves(*this, out);
  return out;
}

std::vector<NaryTree> parse_bracketed(std::string_view text) { return Reader(text).read_all(); }

std::string serialize_bracketed(const NaryTree& tree) {
  std::string out;
  write(tree, out);
  return out;
}

std::string strip_function_tags(std::string_view label) {
  // Bracket tokens such as -LRB- or -NONE- carry no function tags.
  if (label.starts_with('-')) return std::string(label);
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == '-' || label[i] == '=') return std::string(label.substr(0, i));
  }
  return std::string(label);
}

std::optional<NaryTree> preprocess(const NaryTree& tree) { return strip(tree); }

}  // namespace syndist
