#include "syndist/learning/trainer.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <random>

#include "syndist/binarizer.hpp"
#include "syndist/errors.hpp"
#include "syndist/scorer.hpp"

namespace syndist::learning {

Vocabulary Vocabulary::open() {
  Vocabulary v;
  v.has_unknown_ = true;
  v.add(std::string(kUnknownToken));
  return v;
}

Vocabulary Vocabulary::closed() {
  Vocabulary v;
  v.add(std::string(kEmptyLabel));
  return v;
}

Vocabulary Vocabulary::from_items(std::vector<std::string> items, bool has_unknown) {
  Vocabulary v;
  v.has_unknown_ = has_unknown;
  for (auto& item : items) {
    if (v.index_.contains(item)) throw FormatError("duplicate vocabulary entry '" + item + "'");
    v.add(item);
  }
  if (has_unknown && (v.items_.empty() || v.items_.front() != kUnknownToken))
    throw FormatError("open vocabulary must start with " + std::string(kUnknownToken));
  return v;
}

int Vocabulary::add(const std::string& item) {
  auto [it, inserted] = index_.try_emplace(item, static_cast<int>(items_.size()));
  if (inserted) items_.push_back(item);
  return it->second;
}

int Vocabulary::lookup(const std::string& item) const {
  auto it = index_.find(item);
  if (it != index_.end()) return it->second;
  return has_unknown_ ? 0 : -1;
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw UsageError("config key '" + key + "' has invalid value '" + value + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Example {
  std::vector<int> words, tags;
  Targets targets;
};

std::vector<int> indices(const Vocabulary& vocab, const std::vector<std::string>& items,
                         const char* what) {
  std::vector<int> out;
  out.reserve(items.size());
  for (const auto& s : items) {
    const int i = vocab.lookup(s);
    if (i < 0) throw UsageError(std::string("unknown ") + what + " '" + s + "'");
    out.push_back(i);
  }
  return out;
}

Example make_example(const Model& m, const DistanceTuple& t) {
  Example ex;
  ex.words = indices(m.words, t.words, "word");
  ex.tags = indices(m.tags, t.tags, "tag");
  ex.targets.distances = t.distances;
  ex.targets.word_labels = indices(m.word_labels, t.unary_labels, "word label");
  ex.targets.split_labels = indices(m.split_labels, t.split_labels, "split label");
  return ex;
}

int best_label(const Matrix& probs, Eigen::Index col, bool skip_empty) {
  Eigen::Index best = skip_empty && probs.rows() > 1 ? 1 : 0;
  for (Eigen::Index r = best + 1; r < probs.rows(); ++r) {
    if (probs(r, col) > probs(best, col)) best = r;
  }
  return static_cast<int>(best);
}

void zero(ModelParams& g) {
  for (auto& t : g.tensors()) t.value->setZero();
}

}  // namespace

void TrainConfig::set(const std::string& key, const std::string& value) {
  if (key == "embed") embed = parse_number<int>(key, value);
  else if (key == "hidden") hidden = parse_number<int>(key, value);
  else if (key == "conv") conv = parse_number<int>(key, value);
  else if (key == "ff_hidden") ff_hidden = parse_number<int>(key, value);
  else if (key == "learning_rate") adam.learning_rate = parse_number<double>(key, value);
  else if (key == "beta1") adam.beta1 = parse_number<double>(key, value);
  else if (key == "beta2") adam.beta2 = parse_number<double>(key, value);
  else if (key == "epsilon") adam.epsilon = parse_number<double>(key, value);
  else if (key == "weight_decay") adam.weight_decay = parse_number<double>(key, value);
  else if (key == "epochs") epochs = parse_number<int>(key, value);
  else if (key == "batch_size") batch_size = parse_number<int>(key, value);
  else if (key == "clip_norm") clip_norm = parse_number<double>(key, value);
  else if (key == "objective") objective = parse_distance_loss(value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "engine") engine = parse_engine(value);
  else throw UsageError("unknown config key '" + key + "'");
  if (epochs < 0 || batch_size < 1) throw UsageError("epochs must be >= 0 and batch_size >= 1");
}

std::map<std::string, std::string> TrainConfig::to_map() const {
  return {{"embed", std::to_string(embed)},
          {"hidden", std::to_string(hidden)},
          {"conv", std::to_string(conv)},
          {"ff_hidden", std::to_string(ff_hidden)},
          {"learning_rate", format_double(adam.learning_rate)},
          {"beta1", format_double(adam.beta1)},
          {"beta2", format_double(adam.beta2)},
          {"epsilon", format_double(adam.epsilon)},
          {"weight_decay", format_double(adam.weight_decay)},
          {"epochs", std::to_string(epochs)},
          {"batch_size", std::to_string(batch_size)},
          {"clip_norm", format_double(clip_norm)},
          {"objective", std::string(distance_loss_name(objective))},
          {"seed", std::to_string(seed)},
          {"engine", std::string(engine_name(engine))}};
}

TrainConfig load_config(std::istream& in, TrainConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

Model initialize_model(const std::vector<DistanceTuple>& corpus, const TrainConfig& config) {
  Model m;
  for (const auto& t : corpus) {
    t.validate();
    for (const auto& w : t.words) m.words.add(w);
    for (const auto& s : t.tags) m.tags.add(s);
    for (const auto& l : t.unary_labels) m.word_labels.add(l);
    for (const auto& l : t.split_labels) m.split_labels.add(l);
  }
  Dimensions dims;
  dims.word_vocab = m.words.size();
  dims.tag_vocab = m.tags.size();
  dims.word_labels = m.word_labels.size();
  dims.split_labels = m.split_labels.size();
  dims.embed = config.embed;
  dims.hidden = config.hidden;
  dims.conv = config.conv;
  dims.ff_hidden = config.ff_hidden;
  m.params = ModelParams::random(dims, config.seed);
  return m;
}

DistanceTuple predict_tuple(const Model& model, const std::vector<std::string>& words,
                            const std::vector<std::string>& tags) {
  if (words.size() != tags.size()) throw UsageError("one tag per word required");
  const auto r = forward(model.params, indices(model.words, words, "word"),
                         indices(model.tags, tags, "tag"));
  const std::size_t n = words.size();

  DistanceTuple out;
  out.words = words;
  out.tags = tags;
  out.distances = r.distances;
  for (std::size_t i = 0; i < n; ++i) {
    const bool root = n == 1;
    out.unary_labels.push_back(
        model.word_labels.at(best_label(r.word_label_probs, static_cast<Eigen::Index>(i), root)));
  }
  if (n > 1) {
    const auto root = static_cast<std::size_t>(
        std::max_element(out.distances.begin(), out.distances.end()) - out.distances.begin());
    for (std::size_t i = 0; i + 1 < n; ++i)
      out.split_labels.push_back(model.split_labels.at(
          best_label(r.split_label_probs, static_cast<Eigen::Index>(i), i == root)));
  }
  return out;
}

NaryTree predict_tree(const Model& model, const std::vector<std::string>& words,
                      const std::vector<std::string>& tags, Engine engine) {
  return debinarize(decode(predict_tuple(model, words, tags), engine));
}

DevScore evaluate(const Model& model, const std::vector<DistanceTuple>& dev, Engine engine) {
  std::vector<NaryTree> gold, pred;
  gold.reserve(dev.size());
  pred.reserve(dev.size());
  for (const auto& t : dev) {
    gold.push_back(debinarize(decode(t, engine)));
    pred.push_back(predict_tree(model, t.words, t.tags, engine));
  }
  const auto report = score(gold, pred);
  return {report.labeled.f1, report.unlabeled.f1, report.word_label_accuracy};
}

TrainResult train(const std::vector<DistanceTuple>& corpus, const std::vector<DistanceTuple>& dev,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  if (corpus.empty()) throw UsageError("training corpus is empty");
  TrainResult result;
  Model model = initialize_model(corpus, config);

  std::vector<Example> examples;
  examples.reserve(corpus.size());
  for (const auto& t : corpus) examples.push_back(make_example(model, t));

  auto record = [&](EpochMetrics m) {
    const DevScore s = evaluate(model, dev, config.engine);
    m.dev_labeled_f1 = s.labeled_f1;
    m.dev_unlabeled_f1 = s.unlabeled_f1;
    m.dev_word_label_accuracy = s.word_label_accuracy;
    result.history.push_back(m);
    if (on_epoch) on_epoch(m);
    return m;
  };

  {
    EpochMetrics base;
    for (const auto& ex : examples) {
      const auto l = loss_and_gradient(model.params, ex.words, ex.tags, ex.targets,
                                       config.objective, nullptr);
      base.distance_loss += l.distance;
      base.label_loss += l.label;
    }
    base.distance_loss /= static_cast<double>(examples.size());
    base.label_loss /= static_cast<double>(examples.size());
    record(base);
  }
  result.model = model;
  double best_f1 = result.history.front().dev_labeled_f1;

  Adam adam(model.params, config.adam);
  ModelParams grads = ModelParams::zeros(model.params.dims);
  std::mt19937_64 shuffle_rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    EpochMetrics m;
    m.epoch = epoch;
    int pending = 0;
    auto flush = [&] {
      clip_global_norm(grads, config.clip_norm);
      adam.step(model.params, grads);
      zero(grads);
      pending = 0;
    };
    for (std::size_t idx : order) {
      const auto& ex = examples[idx];
      const auto l = loss_and_gradient(model.params, ex.words, ex.tags, ex.targets,
                                       config.objective, &grads);
      m.distance_loss += l.distance;
      m.label_loss += l.label;
      if (++pending == config.batch_size) flush();
    }
    if (pending > 0) flush();
    m.distance_loss /= static_cast<double>(examples.size());
    m.label_loss /= static_cast<double>(examples.size());

    const EpochMetrics done = record(m);
    if (dev.empty() || done.dev_labeled_f1 > best_f1) {
      best_f1 = done.dev_labeled_f1;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

}  // namespace syndist::learning
