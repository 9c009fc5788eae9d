// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gradcheck.hpp"
#include "syndist/bench.hpp"
#include "syndist/learning/trainer.hpp"
#include "syndist/pipeline.hpp"
#include "syndist/scorer.hpp"
#include "syndist/synthetic.hpp"
#include "test_support.hpp"

#ifndef SYNDIST_DATA_DIR
#define SYNDIST_DATA_DIR "data"
#endif

using namespace syndist;
namespace lrn = syndist::learning;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr Engine kEngines[] = {Engine::kScan, Engine::kRmq, Engine::kStack};

// 1. Every labeled binary tree over 2..6 leaves survives encode/decode.
Outcome codec_bijection() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string empty(kEmptyLabel);
  const std::vector<std::string> labels{"S", "VP", empty};
  const std::vector<std::string> unary{empty, "NP"};
  std::size_t total = 0, failures = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    // Shapes only; labelings are enumerated below by counting in base |labels|.
    const auto shapes = testing::enumerate_binary(0, n - 1, {"X"}, {empty});
    std::size_t internal_combos = 1, unary_combos = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) internal_combos *= labels.size();
    for (std::size_t i = 0; i < n; ++i) unary_combos *= unary.size();
    for (const auto& shape : shapes) {
      for (std::size_t a = 0; a < internal_combos; ++a) {
        auto internals = shape.internals();
        for (std::size_t i = 0, code = a; i < internals.size(); ++i, code /= labels.size())
          internals[i].label = labels[code % labels.size()];
        for (std::size_t b = 0; b < unary_combos; ++b) {
          auto terminals = shape.terminals();
          for (std::size_t i = 0, code = b; i < terminals.size(); ++i, code /= unary.size())
            terminals[i].unary_label = unary[code % unary.size()];
          const BinaryTree tree(std::move(terminals), internals, shape.root());
          const auto tuple = encode(tree);
          for (Engine e : kEngines) failures += decode(tuple, e) != tree;
          ++total;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 60.0,
          fmt("%zu trees x 3 engines, %zu failures, %.1f s", total, failures, secs)};
}

// 2. Strictly monotone transforms of tie-free vectors decode to the same tree.
Outcome rank_invariance() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  std::uniform_int_distribution<std::size_t> length(1, 60);
  std::uniform_int_distribution<int> pick(0, 4);
  using Fn = std::function<double(double)>;
  std::size_t cases = 0, mismatches = 0;
  for (int v = 0; v < 1000; ++v) {
    std::vector<double> d;
    std::set<double> seen;
    const std::size_t m = length(rng);
    while (d.size() < m) {
      const double x = unit(rng);
      if (seen.insert(x).second) d.push_back(x);
    }
    const auto tree = decode(testing::tuple_from(d), Engine::kStack);
    for (int k = 0; k < 10; ++k) {
      // Composition of two random strictly increasing maps.
      std::vector<Fn> parts;
      for (int c = 0; c < 2; ++c) {
        const double a = scale(rng), b = unit(rng) * 5;
        switch (pick(rng)) {
          case 0: parts.push_back([=](double x) { return a * x + b; }); break;
          case 1: parts.push_back([=](double x) { return std::exp(a * x); }); break;
          case 2: parts.push_back([=](double x) { return x + a * x * x * x; }); break;
          case 3: parts.push_back([=](double x) { return std::atan(a * x) + b; }); break;
          default: parts.push_back([=](double x) { return std::log1p(std::exp(a * x)); }); break;
        }
      }
      auto f = d;
      for (auto& x : f) x = parts[1](parts[0](x));
      const auto transformed = testing::tuple_from(f);
      ++cases;
      for (Engine e : kEngines) {
        if (decode(transformed, e) != tree) {
          ++mismatches;
          break;
        }
      }
    }
  }
  return {mismatches == 0, fmt("%zu transformed vectors, %zu mismatches", cases, mismatches)};
}

// 3. The three decoders agree, ties included.
Outcome engine_equivalence() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> words(1, 200);
  std::uniform_int_distribution<int> range(1, 50);
  std::size_t disagreements = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto t = testing::tuple_from(testing::random_distances(rng, words(rng) - 1, range(rng)));
    const auto scan = decode(t, Engine::kScan);
    disagreements += decode(t, Engine::kRmq) != scan || decode(t, Engine::kStack) != scan;
  }
  return {disagreements == 0, fmt("10000 tuples, %zu disagreements", disagreements)};
}

// 4. debinarize(binarize(t)) = t on the sample treebank and random trees.
Outcome binarization_roundtrip() {
  std::ifstream in(std::string(SYNDIST_DATA_DIR) + "/sample.mrg");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto sample = load_treebank(buf.str());
  std::size_t failures = 0;
  for (const auto& t : sample) failures += debinarize(binarize(t)) != t;
  testing::TreeGenerator gen(4);
  std::size_t chains = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto t = gen.nary(6);
    const auto b = binarize(t);
    failures += debinarize(b) != t;
    for (const auto& term : b.terminals()) chains += term.unary_label.find('+') != std::string::npos;
  }
  return {!sample.empty() && failures == 0,
          fmt("%zu sample + 10000 random trees (%zu words under unary chains), %zu failures",
              sample.size(), chains, failures)};
}

double vector_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

// 5. Analytic gradients against central differences.
Outcome gradients() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  const double h = 1e-6;
  double worst_rank = 0, worst_mse = 0, worst_ce = 0, worst_net = 0;

  int points = 0;
  while (points < 100) {
    const std::size_t m = 2 + rng() % 10;
    std::vector<double> d(m), p(m);
    for (std::size_t i = 0; i < m; ++i) {
      d[i] = static_cast<double>(rng() % 5);
      p[i] = g(rng);
    }
    // Smooth point: every hinge well away from its kink.
    bool smooth = true;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (d[i] != d[j] &&
            std::abs(1 - (d[i] > d[j] ? 1 : -1) * (p[i] - p[j])) < 1e-3)
          smooth = false;
    if (!smooth) continue;
    ++points;
    for (auto kind : {lrn::DistanceLoss::kRank, lrn::DistanceLoss::kMse}) {
      const auto analytic = lrn::distance_loss(kind, d, p).gradient;
      std::vector<double> numeric(m);
      for (std::size_t i = 0; i < m; ++i) {
        auto up = p, down = p;
        up[i] += h;
        down[i] -= h;
        numeric[i] = (lrn::distance_loss(kind, d, up).value -
                      lrn::distance_loss(kind, d, down).value) / (2 * h);
      }
      double& worst = kind == lrn::DistanceLoss::kRank ? worst_rank : worst_mse;
      worst = std::max(worst, vector_relative_error(analytic, numeric));
    }
  }

  for (int point = 0; point < 100; ++point) {
    const Eigen::Index rows = 2 + static_cast<Eigen::Index>(rng() % 6);
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(rng() % 5);
    lrn::Matrix logits(rows, cols);
    for (Eigen::Index k = 0; k < logits.size(); ++k) logits.data()[k] = 2 * g(rng);
    std::vector<int> targets;
    for (Eigen::Index c = 0; c < cols; ++c) targets.push_back(static_cast<int>(rng() % rows));
    const auto r = lrn::softmax_cross_entropy(targets, logits);
    std::vector<double> analytic, numeric;
    for (Eigen::Index k = 0; k < logits.size(); ++k) {
      auto up = logits, down = logits;
      up.data()[k] += h;
      down.data()[k] -= h;
      analytic.push_back(r.gradient.data()[k]);
      numeric.push_back((lrn::softmax_cross_entropy(targets, up).value -
                         lrn::softmax_cross_entropy(targets, down).value) / (2 * h));
    }
    worst_ce = std::max(worst_ce, vector_relative_error(analytic, numeric));
  }

  points = 0;
  while (points < 100) {
    auto problem = testing::random_network_problem(rng, 1 + rng() % 6);
    const auto objective = points % 2 == 0 ? lrn::DistanceLoss::kRank : lrn::DistanceLoss::kMse;
    if (objective == lrn::DistanceLoss::kRank && !testing::rank_loss_is_smooth(problem, 1e-3))
      continue;
    worst_net = std::max(worst_net, testing::network_relative_error(problem, objective));
    ++points;
  }

  const bool pass = worst_rank < 1e-5 && worst_mse < 1e-5 && worst_ce < 1e-5 && worst_net < 1e-4;
  return {pass, fmt("max relative error: rank %.2e, mse %.2e, cross-entropy %.2e, network %.2e",
                    worst_rank, worst_mse, worst_ce, worst_net)};
}

// 6. Hand-derived loss values.
Outcome loss_fixtures() {
  const std::vector<double> d{2, 1};
  const double rank = lrn::rank_loss(d, std::vector<double>{0.5, 0.7}).value;
  const double mse = lrn::mse_loss(d, std::vector<double>{0, 0}).value;
  const lrn::Matrix uniform = lrn::Matrix::Constant(4, 1, 0.25);
  const double ce = lrn::label_loss(std::vector<int>{1}, uniform).value;
  const bool pass = std::abs(rank - 1.2) <= 1e-12 && std::abs(mse - 5.0) <= 1e-12 &&
                    std::abs(ce - std::log(4.0)) <= 1e-12;
  return {pass, fmt("rank %.15g, mse %.15g, uniform-4 cross-entropy %.15g", rank, mse, ce)};
}

// 7. Rank-loss model learns the synthetic grammar; MSE does no better.
Outcome learnability() {
  const auto t0 = std::chrono::steady_clock::now();
  PcfgOptions opt;
  opt.sentences = 2200;
  opt.max_length = 20;
  opt.seed = 7;
  const auto tuples = encode_trees(generate_pcfg_corpus(opt), nullptr);
  const std::vector<DistanceTuple> train_set(tuples.begin(), tuples.begin() + 2000);
  const std::vector<DistanceTuple> dev(tuples.begin() + 2000, tuples.end());

  std::set<std::string> vocab;
  for (const auto& t : train_set) vocab.insert(t.words.begin(), t.words.end());

  lrn::TrainConfig cfg;
  cfg.epochs = 20;
  cfg.seed = 7;
  auto run = [&](lrn::DistanceLoss objective) {
    cfg.objective = objective;
    const auto r = lrn::train(train_set, dev, cfg, [&](const lrn::EpochMetrics& m) {
      std::fprintf(stderr, "  [%s] epoch %2d  dist %.4f  label %.4f  dev F1 %.2f / %.2f\n",
                   std::string(lrn::distance_loss_name(objective)).c_str(), m.epoch,
                   m.distance_loss, m.label_loss, m.dev_labeled_f1, m.dev_unlabeled_f1);
    });
    return r.history[static_cast<std::size_t>(r.best_epoch)].dev_unlabeled_f1;
  };
  const double rank_f1 = run(lrn::DistanceLoss::kRank);
  const double mse_f1 = run(lrn::DistanceLoss::kMse);
  const double secs = seconds_since(t0);
  const bool pass = rank_f1 >= 90.0 && mse_f1 <= rank_f1 && secs < 1800.0;
  return {pass, fmt("vocab %zu, dev unlabeled F1 rank %.2f, mse %.2f, %.0f s for both runs",
                    vocab.size(), rank_f1, mse_f1, secs)};
}

// 8. Growth of decode time on left chains.
Outcome complexity() {
  const std::size_t sizes[] = {10000, 20000, 40000};
  stabilize_allocator();
  double t[3][3];
  for (int s = 0; s < 3; ++s) {
    const auto tuple = make_bench_tuple(sizes[s], Shape::kLeftChain, 8);
    for (int e = 0; e < 3; ++e)
      t[e][s] = time_decode(tuple, kEngines[e], kEngines[e] == Engine::kScan ? 9 : 41);
  }
  const double scan1 = t[0][1] / t[0][0], scan2 = t[0][2] / t[0][1];
  const double rmq1 = t[1][1] / t[1][0], rmq2 = t[1][2] / t[1][1];
  const bool stack_fastest = t[2][2] < t[0][2] && t[2][2] < t[1][2];
  const bool pass = scan1 >= 3.2 && scan2 >= 3.2 && rmq1 <= 2.6 && rmq2 <= 2.6 && stack_fastest;
  return {pass, fmt("scan ratios %.2f %.2f, rmq ratios %.2f %.2f, at n=40000 scan %.4fs rmq "
                    "%.4fs stack %.4fs",
                    scan1, scan2, rmq1, rmq2, t[0][2], t[1][2], t[2][2])};
}

// 9. Hand-computed scorer example and labeled <= unlabeled.
Outcome scorer() {
  const auto gold = parse_bracketed("(S (A (X a) (X b)) (B (X c) (X d) (X e)))").at(0);
  const auto pred = parse_bracketed("(S (A (X a) (X b)) (C (X c) (D (X d) (X e))))").at(0);
  const auto r = score({gold}, {pred});
  auto round2 = [](double x) { return std::round(x * 100) / 100; };
  const bool fixture = round2(r.labeled.precision) == 50.0 &&
                       round2(r.labeled.recall) == 66.67 && round2(r.labeled.f1) == 57.14;
  testing::TreeGenerator gen(9);
  std::size_t violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + gen.rng()() % 30;
    const auto s = score({gen.nary_over(n)}, {gen.nary_over(n)});
    violations += s.labeled.f1 > s.unlabeled.f1;
  }
  return {fixture && violations == 0,
          fmt("LP %.2f LR %.2f F1 %.2f; %zu of 1000 random pairs with labeled > unlabeled",
              r.labeled.precision, r.labeled.recall, r.labeled.f1, violations)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"codec bijection", codec_bijection},
      {"rank invariance", rank_invariance},
      {"engine equivalence", engine_equivalence},
      {"binarization roundtrip", binarization_roundtrip},
      {"gradient correctness", gradients},
      {"loss fixtures", loss_fixtures},
      {"learnability", learnability},
      {"decode complexity", complexity},
      {"scorer fixtures", scorer},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
