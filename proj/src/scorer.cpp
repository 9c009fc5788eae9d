#include "syndist/scorer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <utility>

#include <json.hpp>

#include "syndist/binarizer.hpp"
#include "syndist/errors.hpp"

namespace syndist {

EvalCounts& EvalCounts::operator+=(const EvalCounts& o) {
  matched_labeled += o.matched_labeled;
  matched_unlabeled += o.matched_unlabeled;
  gold_total += o.gold_total;
  pred_total += o.pred_total;
  correct_word_labels += o.correct_word_labels;
  total_words += o.total_words;
  correct_split_labels += o.correct_split_labels;
  total_splits += o.total_splits;
  return *this;
}

namespace {

std::int32_t collect(const NaryTree& t, std::int32_t start, std::vector<Span>& out) {
  if (t.is_leaf()) return start + 1;
  const std::size_t slot = out.size();
  out.push_back({t.label, start, start});
  std::int32_t end = start;
  for (const auto& c : t.children) end = collect(c, end, out);
  out[slot].end = end;
  return end;
}

template <typename Key>
std::int64_t multiset_overlap(std::vector<Key> a, std::vector<Key> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::int64_t matched = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++matched;
      ++i;
      ++j;
    }
  }
  return matched;
}

std::vector<std::pair<std::int32_t, std::int32_t>> unlabeled(const std::vector<Span>& spans) {
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  out.reserve(spans.size());
  for (const auto& s : spans) out.emplace_back(s.start, s.end);
  return out;
}

double percent(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<Span> extract_spans(const NaryTree& tree) {
  std::vector<Span> spans;
  collect(tree, 0, spans);
  std::sort(spans.begin(), spans.end());
  return spans;
}

EvalCounts count_sentence(const NaryTree& gold, const NaryTree& pred) {
  const auto gl = gold.leaves();
  const auto pl = pred.leaves();
  if (gl.size() != pl.size()) throw EvaluationError("sentence lengths differ");
  for (std::size_t i = 0; i < gl.size(); ++i) {
    if (gl[i]->word != pl[i]->word)
      throw EvaluationError("word " + std::to_string(i) + " differs ('" + gl[i]->word +
                            "' vs '" + pl[i]->word + "')");
  }

  const auto gs = extract_spans(gold);
  const auto ps = extract_spans(pred);
  EvalCounts c;
  c.gold_total = static_cast<std::int64_t>(gs.size());
  c.pred_total = static_cast<std::int64_t>(ps.size());
  c.matched_labeled = multiset_overlap(gs, ps);
  c.matched_unlabeled = multiset_overlap(unlabeled(gs), unlabeled(ps));

  // Word and split labels compare the binarized forms position by position.
  const auto gb = binarize(gold);
  const auto pb = binarize(pred);
  c.total_words = static_cast<std::int64_t>(gb.size());
  for (std::size_t i = 0; i < gb.size(); ++i)
    c.correct_word_labels += gb.terminals()[i].unary_label == pb.terminals()[i].unary_label;
  c.total_splits = static_cast<std::int64_t>(gb.internals().size());
  for (std::size_t i = 0; i < gb.internals().size(); ++i)
    c.correct_split_labels += gb.internals()[i].label == pb.internals()[i].label;
  return c;
}

Prf prf(std::int64_t matched, std::int64_t gold_total, std::int64_t pred_total) {
  Prf r;
  r.precision = percent(matched, pred_total);
  r.recall = percent(matched, gold_total);
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

ScoreReport finalize(const EvalCounts& counts) {
  ScoreReport r;
  r.counts = counts;
  r.labeled = prf(counts.matched_labeled, counts.gold_total, counts.pred_total);
  r.unlabeled = prf(counts.matched_unlabeled, counts.gold_total, counts.pred_total);
  r.word_label_accuracy = percent(counts.correct_word_labels, counts.total_words);
  r.split_label_accuracy = percent(counts.correct_split_labels, counts.total_splits);
  return r;
}

ScoreReport score(const std::vector<NaryTree>& gold, const std::vector<NaryTree>& pred) {
  if (gold.size() != pred.size())
    throw EvaluationError("gold has " + std::to_string(gold.size()) + " sentences, prediction " +
                          std::to_string(pred.size()));
  EvalCounts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    try {
      total += count_sentence(gold[i], pred[i]);
    } catch (const EvaluationError& e) {
      throw EvaluationError("sentence " + std::to_string(i) + ": " + e.what());
    }
  }
  return finalize(total);
}

double word_label_accuracy(const std::vector<DistanceTuple>& gold,
                           const std::vector<DistanceTuple>& pred) {
  if (gold.size() != pred.size()) throw UsageError("tuple lists differ in length");
  std::int64_t correct = 0;
  std::int64_t total = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s].unary_labels;
    const auto& p = pred[s].unary_labels;
    if (g.size() != p.size())
      throw UsageError("sentence " + std::to_string(s) + " has mismatched word counts");
    for (std::size_t i = 0; i < g.size(); ++i) correct += g[i] == p[i];
    total += static_cast<std::int64_t>(g.size());
  }
  return percent(correct, total);
}

std::string format_report(const ScoreReport& r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-10s %10s %10s %10s %12s\n", "", "precision", "recall", "F1",
                "label acc.");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %10.2f %10.2f %10.2f %12.2f\n", "labeled",
                r.labeled.precision, r.labeled.recall, r.labeled.f1, r.word_label_accuracy);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %10.2f %10.2f %10.2f %12s\n", "unlabeled",
                r.unlabeled.precision, r.unlabeled.recall, r.unlabeled.f1, "-");
  out += buf;
  std::snprintf(buf, sizeof buf,
                "brackets: gold %lld, predicted %lld, matched %lld labeled / %lld unlabeled\n"
                "split-label accuracy: %.2f\n",
                static_cast<long long>(r.counts.gold_total),
                static_cast<long long>(r.counts.pred_total),
                static_cast<long long>(r.counts.matched_labeled),
                static_cast<long long>(r.counts.matched_unlabeled), r.split_label_accuracy);
  out += buf;
  return out;
}

std::string report_json(const ScoreReport& r) {
  nlohmann::json j;
  auto row = [](const Prf& p) {
    return nlohmann::json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
  };
  j["labeled"] = row(r.labeled);
  j["unlabeled"] = row(r.unlabeled);
  j["word_label_accuracy"] = r.word_label_accuracy;
  j["split_label_accuracy"] = r.split_label_accuracy;
  const auto& c = r.counts;
  j["counts"] = {{"matched_labeled", c.matched_labeled},
                 {"matched_unlabeled", c.matched_unlabeled},
                 {"gold_total", c.gold_total},
                 {"pred_total", c.pred_total},
                 {"correct_word_labels", c.correct_word_labels},
                 {"total_words", c.total_words},
                 {"correct_split_labels", c.correct_split_labels},
                 {"total_splits", c.total_splits}};
  return j.dump(2);
}

}  // namespace syndist
