#include "syndist/synthetic.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>

#include "syndist/errors.hpp"

namespace syndist {

namespace {

struct Rule {
  double weight;
  std::vector<std::string> rhs;
};

struct Category {
  std::string label;  // label written to the tree
  std::vector<Rule> rules;
};

struct Lexical {
  std::string tag;
  std::vector<std::string> words;
};

// Nonterminal symbols are keys of grammar(); anything else is a lexical
// category from lexicon().
const std::map<std::string, Category>& grammar() {
  static const std::map<std::string, Category> g = {
      {"S",
       {"S",
        {{0.55, {"NP", "VP", "PUNCT"}},
         {0.15, {"NP", "VP"}},
         {0.10, {"PP", "COMMA", "NP", "VP", "PUNCT"}},
         {0.10, {"ADVP", "COMMA", "NP", "VP", "PUNCT"}},
         {0.10, {"VPimp", "PUNCT"}}}}},
      {"Sin", {"S", {{1.0, {"NP", "VP"}}}}},
      {"NP",
       {"NP",
        {{0.22, {"DT", "NN"}},
         {0.12, {"DT", "JJ", "NN"}},
         {0.12, {"PRP"}},
         {0.10, {"NNP"}},
         {0.10, {"DT", "NNS"}},
         {0.06, {"CD", "NNS"}},
         {0.16, {"NPB", "PPof"}},
         {0.12, {"NPB", "CC", "NPB"}}}}},
      {"NPB",
       {"NP",
        {{0.35, {"DT", "NN"}},
         {0.20, {"DT", "JJ", "NN"}},
         {0.15, {"NNP"}},
         {0.20, {"DT", "NNS"}},
         {0.10, {"DT", "JJ", "NNS"}}}}},
      {"PPof", {"PP", {{1.0, {"OF", "NPB"}}}}},
      {"PP", {"PP", {{1.0, {"IN", "NP"}}}}},
      {"VP",
       {"VP",
        {{0.28, {"VBD", "NP"}},
         {0.10, {"VBD"}},
         {0.14, {"VBD", "NP", "PP"}},
         {0.10, {"VBD", "SBAR"}},
         {0.10, {"MD", "VPb"}},
         {0.10, {"VBD", "ADJP"}},
         {0.10, {"VBD", "PP"}},
         {0.08, {"VBZ", "NP"}}}}},
      {"VPb", {"VP", {{0.6, {"VB", "NP"}}, {0.2, {"VB"}}, {0.2, {"VB", "PP"}}}}},
      {"VPimp", {"VP", {{0.7, {"VB", "NP"}}, {0.3, {"VB", "NP", "PP"}}}}},
      {"SBAR", {"SBAR", {{0.6, {"THAT", "Sin"}}, {0.4, {"Sin"}}}}},
      {"ADJP", {"ADJP", {{0.6, {"JJ"}}, {0.4, {"RB", "JJ"}}}}},
      {"ADVP", {"ADVP", {{1.0, {"RB"}}}}},
  };
  return g;
}

const std::map<std::string, Lexical>& lexicon() {
  static const std::map<std::string, Lexical> l = {
      {"DT", {"DT", {"the", "a", "this", "every", "some", "no"}}},
      {"NN",
       {"NN", {"cat",  "dog",   "man",    "woman", "house", "car",    "tree",
               "book", "table", "garden", "city",  "river", "child",  "teacher",
               "box",  "door",  "window", "road",  "bird",  "letter"}}},
      {"NNS",
       {"NNS",
        {"cats", "dogs", "books", "trees", "children", "cars", "birds", "letters", "boxes",
         "teachers"}}},
      {"NNP", {"NNP", {"John", "Mary", "Paris", "London", "Alice", "Bob", "Kim", "Sam"}}},
      {"JJ",
       {"JJ",
        {"big", "small", "red", "old", "happy", "quiet", "green", "tall", "strange", "bright"}}},
      {"RB", {"RB", {"very", "quickly", "often", "never", "still", "really"}}},
      {"VBD",
       {"VBD",
        {"saw", "liked", "found", "took", "said", "thought", "seemed", "walked", "slept", "knew",
         "opened", "painted"}}},
      {"VB", {"VB", {"see", "take", "find", "open", "paint", "read", "watch", "visit"}}},
      {"VBZ", {"VBZ", {"sees", "likes", "finds", "reads", "owns"}}},
      {"MD", {"MD", {"will", "can", "should", "might"}}},
      {"IN", {"IN", {"in", "on", "near", "under", "with", "behind"}}},
      {"OF", {"IN", {"of"}}},
      {"THAT", {"IN", {"that"}}},
      {"CC", {"CC", {"and", "or", "but"}}},
      {"PRP", {"PRP", {"he", "she", "it", "they", "we"}}},
      {"CD", {"CD", {"two", "three", "four", "five"}}},
      {"PUNCT", {".", {"."}}},
      {"COMMA", {",", {","}}},
  };
  return l;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Returns nullopt-equivalent (false) when the depth budget runs out.
  bool expand(const std::string& symbol, int depth, NaryTree& out, std::size_t& words) {
    if (auto lex = lexicon().find(symbol); lex != lexicon().end()) {
      std::uniform_int_distribution<std::size_t> pick(0, lex->second.words.size() - 1);
      out = NaryTree::leaf(lex->second.tag, lex->second.words[pick(rng_)]);
      ++words;
      return true;
    }
    if (depth > kMaxDepth) return false;
    const auto& cat = grammar().at(symbol);
    std::vector<double> weights;
    for (const auto& r : cat.rules) weights.push_back(r.weight);
    std::discrete_distribution<std::size_t> choose(weights.begin(), weights.end());
    const auto& rule = cat.rules[choose(rng_)];

    std::vector<NaryTree> kids(rule.rhs.size());
    for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
      if (!expand(rule.rhs[i], depth + 1, kids[i], words)) return false;
    }
    out = NaryTree::node(cat.label, std::move(kids));
    return true;
  }

 private:
  static constexpr int kMaxDepth = 14;
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<NaryTree> generate_pcfg_corpus(const PcfgOptions& options) {
  if (options.min_length < 1 || options.min_length > options.max_length)
    throw UsageError("need 1 <= min_length <= max_length");
  Sampler sampler(options.seed);
  std::vector<NaryTree> out;
  out.reserve(options.sentences);
  while (out.size() < options.sentences) {
    NaryTree tree;
    std::size_t words = 0;
    if (!sampler.expand("S", 0, tree, words)) continue;
    if (words < options.min_length || words > options.max_length) continue;
    out.push_back(std::move(tree));
  }
  return out;
}

}  // namespace syndist
