#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "syndist/codec.hpp"
#include "syndist/treebank.hpp"

namespace syndist {

struct Span {
  std::string label;
  std::int32_t start = 0;
  std::int32_t end = 0;  // exclusive

  friend auto operator<=>(const Span&, const Span&) = default;
};

/// Bracket counts; additive across sentences.
struct EvalCounts {
  std::int64_t matched_labeled = 0;
  std::int64_t matched_unlabeled = 0;
  std::int64_t gold_total = 0;
  std::int64_t pred_total = 0;
  std::int64_t correct_word_labels = 0;
  std::int64_t total_words = 0;
  std::int64_t correct_split_labels = 0;
  std::int64_t total_splits = 0;

  EvalCounts& operator+=(const EvalCounts& other);
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

/// Precision, recall and F1 in percent.
struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct ScoreReport {
  EvalCounts counts;
  Prf labeled;
  Prf unlabeled;
  double word_label_accuracy = 0;
  double split_label_accuracy = 0;
};

/// One span per internal node (root included, preterminals excluded), sorted.
std::vector<Span> extract_spans(const NaryTree& tree);

/// Counts for one sentence. Throws EvaluationError when the leaves differ.
EvalCounts count_sentence(const NaryTree& gold, const NaryTree& pred);

/// Corpus-level PARSEVAL scores. Throws EvaluationError naming the first
/// sentence whose leaves disagree.
ScoreReport score(const std::vector<NaryTree>& gold, const std::vector<NaryTree>& pred);

ScoreReport finalize(const EvalCounts& counts);

Prf prf(std::int64_t matched, std::int64_t gold_total, std::int64_t pred_total);

/// Percentage of words whose predicted unary label equals the gold one.
double word_label_accuracy(const std::vector<DistanceTuple>& gold,
                           const std::vector<DistanceTuple>& pred);

/// Table with labeled/unlabeled rows: precision, recall, F1, label accuracy.
std::string format_report(const ScoreReport& report);
std::string report_json(const ScoreReport& report);

}  // namespace syndist
