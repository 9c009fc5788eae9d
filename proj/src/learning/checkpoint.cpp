#include <istream>
#include <ostream>

#include <json.hpp>

#include "syndist/errors.hpp"
#include "syndist/learning/trainer.hpp"

namespace syndist::learning {

namespace {

constexpr const char* kFormat = "syndist-checkpoint";
constexpr int kVersion = 1;

using nlohmann::json;

}  // namespace

void save_checkpoint(const Model& model, std::ostream& out,
                     const std::map<std::string, std::string>& metadata) {
  const auto& d = model.params.dims;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["metadata"] = metadata;
  j["dimensions"] = {{"word_vocab", d.word_vocab},     {"tag_vocab", d.tag_vocab},
                     {"word_labels", d.word_labels},   {"split_labels", d.split_labels},
                     {"embed", d.embed},               {"hidden", d.hidden},
                     {"conv", d.conv},                 {"ff_hidden", d.ff_hidden}};
  j["vocabularies"] = {{"words", model.words.items()},
                       {"tags", model.tags.items()},
                       {"word_labels", model.word_labels.items()},
                       {"split_labels", model.split_labels.items()}};
  json tensors = json::array();
  for (const auto& t : model.params.tensors()) {
    const Matrix& m = *t.value;
    tensors.push_back({{"name", t.name},
                       {"rows", m.rows()},
                       {"cols", m.cols()},
                       {"data", std::vector<double>(m.data(), m.data() + m.size())}});
  }
  j["tensors"] = std::move(tensors);
  out << j.dump() << '\n';
}

Model load_checkpoint(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != kFormat) throw FormatError("not a syndist checkpoint");
    if (j.at("version") != kVersion)
      throw FormatError("unsupported checkpoint version " + j.at("version").dump());

    Model m;
    const auto& v = j.at("vocabularies");
    m.words = Vocabulary::from_items(v.at("words").get<std::vector<std::string>>(), true);
    m.tags = Vocabulary::from_items(v.at("tags").get<std::vector<std::string>>(), true);
    m.word_labels = Vocabulary::from_items(v.at("word_labels").get<std::vector<std::string>>(), false);
    m.split_labels =
        Vocabulary::from_items(v.at("split_labels").get<std::vector<std::string>>(), false);

    const auto& jd = j.at("dimensions");
    Dimensions d;
    d.word_vocab = jd.at("word_vocab");
    d.tag_vocab = jd.at("tag_vocab");
    d.word_labels = jd.at("word_labels");
    d.split_labels = jd.at("split_labels");
    d.embed = jd.at("embed");
    d.hidden = jd.at("hidden");
    d.conv = jd.at("conv");
    d.ff_hidden = jd.at("ff_hidden");
    if (d.word_vocab != m.words.size() || d.tag_vocab != m.tags.size() ||
        d.word_labels != m.word_labels.size() || d.split_labels != m.split_labels.size())
      throw FormatError("checkpoint vocabulary sizes do not match its dimensions");

    m.params = ModelParams::zeros(d);
    auto slots = m.params.tensors();
    const auto& tensors = j.at("tensors");
    if (tensors.size() != slots.size())
      throw FormatError("checkpoint has " + std::to_string(tensors.size()) + " tensors, expected " +
                        std::to_string(slots.size()));
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto& t = tensors[k];
      Matrix& dst = *slots[k].value;
      if (t.at("name") != slots[k].name)
        throw FormatError("tensor " + std::to_string(k) + " should be '" + slots[k].name + "'");
      if (t.at("rows") != dst.rows() || t.at("cols") != dst.cols())
        throw FormatError("tensor '" + slots[k].name + "' has the wrong shape");
      const auto data = t.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != dst.size())
        throw FormatError("tensor '" + slots[k].name + "' has the wrong number of values");
      std::copy(data.begin(), data.end(), dst.data());
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace syndist::learning
