#include <gtest/gtest.h>

#include <sstream>

#include "syndist/errors.hpp"
#include "syndist/learning/trainer.hpp"
#include "syndist/pipeline.hpp"
#include "syndist/synthetic.hpp"

namespace syndist::learning {
namespace {

std::vector<DistanceTuple> small_corpus(std::size_t sentences, std::uint64_t seed) {
  PcfgOptions opt;
  opt.sentences = sentences;
  opt.max_length = 8;
  opt.seed = seed;
  return encode_trees(generate_pcfg_corpus(opt), nullptr);
}

TrainConfig tiny_config() {
  TrainConfig c;
  c.embed = 4;
  c.hidden = 6;
  c.conv = 6;
  c.ff_hidden = 6;
  c.epochs = 2;
  c.batch_size = 4;
  return c;
}

TEST(Vocabulary, OpenAndClosed) {
  auto open = Vocabulary::open();
  EXPECT_EQ(open.at(0), kUnknownToken);
  EXPECT_EQ(open.add("dog"), 1);
  EXPECT_EQ(open.add("dog"), 1);
  EXPECT_EQ(open.lookup("cat"), 0);

  auto closed = Vocabulary::closed();
  EXPECT_EQ(closed.at(0), kEmptyLabel);
  EXPECT_EQ(closed.lookup("NP"), -1);
  closed.add("NP");
  EXPECT_EQ(closed.lookup("NP"), 1);
  EXPECT_EQ(Vocabulary::from_items(closed.items(), false).lookup("NP"), 1);
}

TEST(TrainConfig, SetAndLoad) {
  std::istringstream in("# comment\nepochs = 3\nlearning_rate=0.01  # inline\n\nobjective = mse\n");
  const auto c = load_config(in);
  EXPECT_EQ(c.epochs, 3);
  EXPECT_DOUBLE_EQ(c.adam.learning_rate, 0.01);
  EXPECT_EQ(c.objective, DistanceLoss::kMse);

  TrainConfig d;
  EXPECT_THROW(d.set("nope", "1"), UsageError);
  EXPECT_THROW(d.set("epochs", "three"), UsageError);
  EXPECT_THROW(d.set("batch_size", "0"), UsageError);
  std::istringstream bad("epochs\n");
  EXPECT_THROW(load_config(bad), UsageError);

  // to_map feeds back through set.
  TrainConfig e;
  for (const auto& [k, v] : c.to_map()) e.set(k, v);
  EXPECT_EQ(e.to_map(), c.to_map());
}

TEST(Train, DeterministicAndRecordsBaseline) {
  const auto corpus = small_corpus(24, 3);
  const auto dev = small_corpus(6, 4);
  std::vector<int> seen;
  const auto a = train(corpus, dev, tiny_config(), [&](const EpochMetrics& m) {
    seen.push_back(m.epoch);
  });
  const auto b = train(corpus, dev, tiny_config());
  EXPECT_EQ(seen, (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(a.history.size(), 3u);
  ASSERT_EQ(b.history.size(), 3u);
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].distance_loss, b.history[i].distance_loss);
    EXPECT_EQ(a.history[i].dev_labeled_f1, b.history[i].dev_labeled_f1);
  }
  EXPECT_EQ(a.best_epoch, b.best_epoch);
  const auto ta = a.model.params.tensors(), tb = b.model.params.tensors();
  for (std::size_t i = 0; i < ta.size(); ++i) EXPECT_EQ(*ta[i].value, *tb[i].value);
}

TEST(Train, LossDecreasesOnTinyCorpus) {
  const auto corpus = small_corpus(30, 5);
  auto cfg = tiny_config();
  cfg.epochs = 6;
  cfg.adam.learning_rate = 5e-3;
  const auto r = train(corpus, {}, cfg);
  EXPECT_LT(r.history.back().distance_loss + r.history.back().label_loss,
            r.history.front().distance_loss + r.history.front().label_loss);
  EXPECT_EQ(r.best_epoch, cfg.epochs);
}

TEST(Train, EmptyCorpusIsAnError) {
  EXPECT_THROW(train({}, {}, tiny_config()), UsageError);
}

TEST(Predict, ProducesDecodableTreesForAnyLength) {
  const auto corpus = small_corpus(10, 7);
  const auto model = initialize_model(corpus, tiny_config());
  for (std::size_t n = 1; n <= 9; ++n) {
    std::vector<std::string> words, tags;
    for (std::size_t i = 0; i < n; ++i) {
      words.push_back(i % 2 ? "never-seen" : corpus[0].words[0]);
      tags.push_back(corpus[0].tags[0]);
    }
    const auto t = predict_tuple(model, words, tags);
    EXPECT_EQ(t.distances.size(), n - 1);
    const NaryTree tree = predict_tree(model, words, tags);
    EXPECT_EQ(tree.leaf_count(), n);
    EXPECT_NE(tree.label, std::string(kEmptyLabel));
  }
  EXPECT_THROW(predict_tuple(model, {"a", "b"}, {"DT"}), UsageError);
}

TEST(Checkpoint, RoundTripPreservesPredictions) {
  const auto corpus = small_corpus(12, 9);
  const auto model = initialize_model(corpus, tiny_config());
  std::stringstream buf;
  save_checkpoint(model, buf, {{"note", "unit"}});
  const auto back = load_checkpoint(buf);
  EXPECT_EQ(back.params.dims, model.params.dims);
  EXPECT_EQ(back.words.items(), model.words.items());
  EXPECT_EQ(back.split_labels.items(), model.split_labels.items());
  for (const auto& t : corpus)
    EXPECT_EQ(predict_tuple(back, t.words, t.tags), predict_tuple(model, t.words, t.tags));
}

TEST(Checkpoint, RejectsCorruptInput) {
  std::istringstream junk("{\"format\": \"something-else\"}");
  EXPECT_THROW(load_checkpoint(junk), FormatError);
  std::istringstream broken("{not json");
  EXPECT_THROW(load_checkpoint(broken), FormatError);

  const auto model = initialize_model(small_corpus(5, 1), tiny_config());
  std::stringstream buf;
  save_checkpoint(model, buf);
  std::string text = buf.str();
  const auto pos = text.find("\"rows\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 6, "\"rowz\"");
  std::istringstream tampered(text);
  EXPECT_THROW(load_checkpoint(tampered), FormatError);
}

}  // namespace
}  // namespace syndist::learning
