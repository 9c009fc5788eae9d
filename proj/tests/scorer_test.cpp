#include <gtest/gtest.h>

#include <json.hpp>

#include "syndist/errors.hpp"
#include "syndist/scorer.hpp"
#include "test_support.hpp"

namespace syndist {
namespace {

NaryTree parse_one(const char* text) { return parse_bracketed(text).at(0); }

const char* kGold = "(S (A (X a) (X b)) (B (X c) (X d) (X e)))";
const char* kPred = "(S (A (X a) (X b)) (C (X c) (D (X d) (X e))))";

TEST(ExtractSpans, RootIncludedPreterminalsExcluded) {
  const auto spans = extract_spans(parse_one(kGold));
  const std::vector<Span> expected{{"A", 0, 2}, {"B", 2, 5}, {"S", 0, 5}};
  EXPECT_EQ(spans, expected);
  EXPECT_TRUE(extract_spans(NaryTree::leaf("NN", "x")).empty());
}

TEST(Score, HandComputedExample) {
  const auto r = score({parse_one(kGold)}, {parse_one(kPred)});
  EXPECT_EQ(r.counts.gold_total, 3);
  EXPECT_EQ(r.counts.pred_total, 4);
  EXPECT_EQ(r.counts.matched_labeled, 2);
  EXPECT_EQ(r.counts.matched_unlabeled, 3);
  EXPECT_NEAR(r.labeled.precision, 50.0, 0.005);
  EXPECT_NEAR(r.labeled.recall, 66.67, 0.005);
  EXPECT_NEAR(r.labeled.f1, 57.14, 0.005);
  EXPECT_NEAR(r.unlabeled.precision, 75.0, 1e-9);
  EXPECT_NEAR(r.unlabeled.recall, 100.0, 1e-9);
}

TEST(Score, IdenticalTreesScoreHundred) {
  const auto r = score({parse_one(kGold)}, {parse_one(kGold)});
  EXPECT_EQ(r.labeled.f1, 100.0);
  EXPECT_EQ(r.unlabeled.f1, 100.0);
  EXPECT_EQ(r.word_label_accuracy, 100.0);
  EXPECT_EQ(r.split_label_accuracy, 100.0);
}

TEST(Score, DuplicateSpansMatchAsMultiset) {
  // NP over NP over the same words: two identical brackets.
  const auto gold = parse_one("(S (NP (NP (X a) (X b))) (X c))");
  const auto pred = parse_one("(S (NP (X a) (X b)) (X c))");
  const auto r = score({gold}, {pred});
  EXPECT_EQ(r.counts.gold_total, 3);
  EXPECT_EQ(r.counts.pred_total, 2);
  EXPECT_EQ(r.counts.matched_labeled, 2);
}

TEST(Score, ZeroMatchesGiveZeroF1) {
  const auto r = prf(0, 3, 4);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(prf(0, 0, 0).f1, 0.0);
}

TEST(Score, MismatchedWordsNameTheSentence) {
  try {
    score({parse_one(kGold), parse_one(kGold)}, {parse_one(kGold), parse_one("(S (X a) (X z))")});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("sentence 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(score({parse_one(kGold)}, {}), EvaluationError);
}

TEST(Score, CountsAreAdditive) {
  testing::TreeGenerator gen(13);
  EvalCounts sum;
  std::vector<NaryTree> gold, pred;
  for (int i = 0; i < 20; ++i) {
    gold.push_back(gen.nary_over(3 + static_cast<std::size_t>(i % 7)));
    pred.push_back(gen.nary_over(3 + static_cast<std::size_t>(i % 7)));
    sum += count_sentence(gold.back(), pred.back());
  }
  EXPECT_EQ(score(gold, pred).counts, sum);
}

TEST(Score, LabeledNeverExceedsUnlabeled) {
  testing::TreeGenerator gen(19);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 25);
    const auto r = score({gen.nary_over(n)}, {gen.nary_over(n)});
    EXPECT_LE(r.labeled.f1, r.unlabeled.f1 + 1e-12);
  }
}

TEST(WordLabelAccuracy, CountsPositions) {
  DistanceTuple a = testing::tuple_from({1, 2});
  DistanceTuple b = a;
  b.unary_labels[1] = "NP";
  EXPECT_NEAR(word_label_accuracy({a}, {b}), 200.0 / 3, 1e-9);
}

TEST(Reports, JsonAndTextCarryTheNumbers) {
  const auto r = score({parse_one(kGold)}, {parse_one(kPred)});
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_NEAR(j["labeled"]["f1"].get<double>(), 57.142857, 1e-5);
  EXPECT_EQ(j["counts"]["matched_labeled"].get<int>(), 2);
  const auto text = format_report(r);
  EXPECT_NE(text.find("57.14"), std::string::npos);
  EXPECT_NE(text.find("66.67"), std::string::npos);
}

}  // namespace
}  // namespace syndist
