#include "syndist/tuple_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "syndist/errors.hpp"

namespace syndist {

using nlohmann::json;

std::string to_json_line(const DistanceTuple& tuple) {
  json j;
  j["words"] = tuple.words;
  j["tags"] = tuple.tags;
  j["unary_labels"] = tuple.unary_labels;
  j["distances"] = tuple.distances;
  j["split_labels"] = tuple.split_labels;
  return j.dump();
}

DistanceTuple from_json_line(const std::string& line, std::size_t line_number) {
  const std::string where = "line " + std::to_string(line_number) + ": ";
  DistanceTuple t;
  try {
    const json j = json::parse(line);
    j.at("words").get_to(t.words);
    j.at("tags").get_to(t.tags);
    j.at("unary_labels").get_to(t.unary_labels);
    j.at("distances").get_to(t.distances);
    j.at("split_labels").get_to(t.split_labels);
    t.validate();
  } catch (const json::exception& e) {
    throw FormatError(where + e.what());
  } catch (const UsageError& e) {
    throw FormatError(where + e.what());
  }
  return t;
}

void write_jsonl(std::ostream& out, const std::vector<DistanceTuple>& tuples) {
  for (const auto& t : tuples) out << to_json_line(t) << '\n';
}

std::vector<DistanceTuple> read_jsonl(std::istream& in) {
  std::vector<DistanceTuple> tuples;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    tuples.push_back(from_json_line(line, number));
  }
  return tuples;
}

}  // namespace syndist
