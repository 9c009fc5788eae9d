#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "syndist/codec.hpp"
#include "syndist/learning/model.hpp"
#include "syndist/learning/optimizer.hpp"
#include "syndist/treebank.hpp"

namespace syndist::learning {

inline constexpr std::string_view kUnknownToken = "<unk>";

/// String <-> index map. Open vocabularies reserve index 0 for kUnknownToken.
class Vocabulary {
 public:
  static Vocabulary open();
  static Vocabulary closed();

  int add(const std::string& item);
  /// Index of `item`; the unknown index for open vocabularies, -1 otherwise.
  int lookup(const std::string& item) const;
  const std::string& at(int index) const { return items_.at(static_cast<std::size_t>(index)); }
  int size() const noexcept { return static_cast<int>(items_.size()); }
  bool has_unknown() const noexcept { return has_unknown_; }
  const std::vector<std::string>& items() const noexcept { return items_; }

  static Vocabulary from_items(std::vector<std::string> items, bool has_unknown);

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> index_;
  bool has_unknown_ = false;
};

/// Parameters plus the vocabularies that give their rows meaning.
struct Model {
  Vocabulary words = Vocabulary::open();
  Vocabulary tags = Vocabulary::open();
  Vocabulary word_labels = Vocabulary::closed();
  Vocabulary split_labels = Vocabulary::closed();
  ModelParams params;
};

struct TrainConfig {
  int embed = 16;
  int hidden = 32;
  int conv = 32;
  int ff_hidden = 32;
  AdamConfig adam;
  int epochs = 20;
  int batch_size = 1;
  double clip_norm = 5.0;
  DistanceLoss objective = DistanceLoss::kRank;
  std::uint64_t seed = 1;
  Engine engine = Engine::kRmq;

  /// Applies `key = value` pairs; throws UsageError on unknown keys.
  void set(const std::string& key, const std::string& value);
  std::map<std::string, std::string> to_map() const;
};

/// Reads a flat `key = value` file (`#` starts a comment).
TrainConfig load_config(std::istream& in, TrainConfig base = {});

struct EpochMetrics {
  int epoch = 0;  // 0 is the untrained baseline
  double distance_loss = 0;  // mean per training sentence
  double label_loss = 0;     // mean per training sentence
  double dev_labeled_f1 = 0;
  double dev_unlabeled_f1 = 0;
  double dev_word_label_accuracy = 0;
};

struct TrainResult {
  Model model;  // parameters of the best dev epoch
  std::vector<EpochMetrics> history;  // baseline first, then one entry per epoch
  int best_epoch = 0;
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Deterministic given (corpus, dev, config). Selects the epoch with the
/// highest dev labeled F1 (ties keep the earlier epoch).
TrainResult train(const std::vector<DistanceTuple>& corpus, const std::vector<DistanceTuple>& dev,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Builds vocabularies from `corpus` and a seeded random initialization.
Model initialize_model(const std::vector<DistanceTuple>& corpus, const TrainConfig& config);

/// Argmax labels and raw predicted distances for one sentence. The label at
/// the root split (or the single word) is the best non-empty label.
DistanceTuple predict_tuple(const Model& model, const std::vector<std::string>& words,
                            const std::vector<std::string>& tags);

NaryTree predict_tree(const Model& model, const std::vector<std::string>& words,
                      const std::vector<std::string>& tags, Engine engine = Engine::kRmq);

struct DevScore {
  double labeled_f1 = 0;
  double unlabeled_f1 = 0;
  double word_label_accuracy = 0;
};

DevScore evaluate(const Model& model, const std::vector<DistanceTuple>& dev, Engine engine);

/// JSON checkpoint: format tag, dimensions, vocabularies, then every tensor of
/// ModelParams::tensors() in order as {name, rows, cols, column-major data}.
void save_checkpoint(const Model& model, std::ostream& out,
                     const std::map<std::string, std::string>& metadata = {});
Model load_checkpoint(std::istream& in);

}  // namespace syndist::learning
