#include "syndist/pipeline.hpp"

#include <ostream>
#include <sstream>

#include "syndist/binarizer.hpp"
#include "syndist/errors.hpp"
#include "syndist/tuple_io.hpp"

namespace syndist {

std::vector<DistanceTuple> encode_trees(const std::vector<NaryTree>& trees, EncodeStats* stats) {
  std::vector<DistanceTuple> out;
  out.reserve(trees.size());
  EncodeStats local;
  for (const auto& t : trees) {
    auto pre = preprocess(t);
    if (!pre) {
      ++local.skipped;
      continue;
    }
    out.push_back(encode(binarize(*pre)));
    ++local.written;
  }
  if (stats) *stats = local;
  return out;
}

EncodeStats encode_treebank(std::string_view text, std::ostream& jsonl) {
  EncodeStats stats;
  write_jsonl(jsonl, encode_trees(parse_bracketed(text), &stats));
  return stats;
}

void decode_jsonl(std::istream& jsonl, Engine engine, std::ostream& out) {
  for (const auto& t : read_jsonl(jsonl))
    out << serialize_bracketed(debinarize(decode(t, engine))) << '\n';
}

RoundtripReport roundtrip_trees(const std::vector<NaryTree>& trees, Engine engine) {
  RoundtripReport report;
  for (const auto& t : trees) {
    const std::size_t index = report.trees + report.skipped;
    auto pre = preprocess(t);
    if (!pre) {
      ++report.skipped;
      continue;
    }
    ++report.trees;
    const std::string expected = serialize_bracketed(*pre);
    std::string got;
    try {
      const auto line = to_json_line(encode(binarize(*pre)));
      got = serialize_bracketed(debinarize(decode(from_json_line(line), engine)));
    } catch (const Error& e) {
      got = std::string("<error: ") + e.what() + ">";
    }
    if (got != expected) {
      ++report.mismatches;
      report.diffs.push_back(std::to_string(index) + ": " + expected + " -> " + got);
    }
  }
  return report;
}

RoundtripReport roundtrip_treebank(std::string_view text, Engine engine) {
  return roundtrip_trees(parse_bracketed(text), engine);
}

std::string format_roundtrip(const RoundtripReport& r) {
  std::ostringstream out;
  out << "trees " << r.trees << "\nskipped " << r.skipped << "\nmismatches " << r.mismatches
      << '\n';
  for (const auto& d : r.diffs) out << "diff " << d << '\n';
  return out.str();
}

std::vector<DistanceTuple> load_corpus(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    std::istringstream in{std::string(text)};
    return read_jsonl(in);
  }
  return encode_trees(parse_bracketed(text), nullptr);
}

std::vector<NaryTree> load_treebank(std::string_view text) {
  std::vector<NaryTree> out;
  for (const auto& t : parse_bracketed(text)) {
    if (auto pre = preprocess(t)) out.push_back(std::move(*pre));
  }
  return out;
}

}  // namespace syndist
