#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "syndist/codec.hpp"
#include "syndist/treebank.hpp"

namespace syndist {

inline constexpr std::string_view kVersion = "0.1.0";

/// preprocess -> binarize -> encode for every tree of a bracketed file.
struct EncodeStats {
  std::size_t written = 0;
  std::size_t skipped = 0;  // trees that vanished in preprocessing
};

std::vector<DistanceTuple> encode_trees(const std::vector<NaryTree>& trees, EncodeStats* stats);
EncodeStats encode_treebank(std::string_view text, std::ostream& jsonl);

/// decode -> debinarize -> serialize, one bracketed tree per line.
void decode_jsonl(std::istream& jsonl, Engine engine, std::ostream& out);

struct RoundtripReport {
  std::size_t trees = 0;
  std::size_t skipped = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> diffs;  // "index: expected -> got"
};

/// Pushes every preprocessed tree through the JSONL interchange and back.
RoundtripReport roundtrip_trees(const std::vector<NaryTree>& trees, Engine engine);
RoundtripReport roundtrip_treebank(std::string_view text, Engine engine);
std::string format_roundtrip(const RoundtripReport& report);

/// Accepts either a bracketed treebank (preprocessed and encoded) or JSONL
/// distance tuples, telling them apart by the first non-blank character.
std::vector<DistanceTuple> load_corpus(std::string_view text);

/// Preprocessed trees of a bracketed file; empty results are dropped.
std::vector<NaryTree> load_treebank(std::string_view text);

}  // namespace syndist
