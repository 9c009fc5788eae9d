#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "syndist/codec.hpp"

namespace syndist {

/// One JSON object per line:
/// `{"words":[...],"tags":[...],"unary_labels":[...],"distances":[...],"split_labels":[...]}`
std::string to_json_line(const DistanceTuple& tuple);

/// Throws FormatError naming `line_number` on malformed input.
DistanceTuple from_json_line(const std::string& line, std::size_t line_number = 0);

void write_jsonl(std::ostream& out, const std::vector<DistanceTuple>& tuples);

/// Blank lines are skipped; line numbers in errors are 1-based.
std::vector<DistanceTuple> read_jsonl(std::istream& in);

}  // namespace syndist
