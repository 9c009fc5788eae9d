#include "syndist/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "syndist/errors.hpp"

namespace syndist {

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kRandom:
      return "random";
    case Shape::kLeftChain:
      return "left-chain";
    case Shape::kRightChain:
      return "right-chain";
  }
  return "?";
}

Shape parse_shape(std::string_view name) {
  if (name == "random") return Shape::kRandom;
  if (name == "left-chain") return Shape::kLeftChain;
  if (name == "right-chain") return Shape::kRightChain;
  throw UsageError("unknown shape '" + std::string(name) +
                   "' (expected random, left-chain or right-chain)");
}

DistanceTuple make_bench_tuple(std::size_t n, Shape shape, std::uint64_t seed) {
  if (n < 1) throw UsageError("benchmark inputs need at least one word");
  DistanceTuple t;
  t.words.assign(n, "w");
  t.tags.assign(n, "T");
  t.unary_labels.assign(n, std::string(kEmptyLabel));
  t.split_labels.assign(n - 1, "X");
  t.distances.resize(n - 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    switch (shape) {
      case Shape::kRandom:
        t.distances[i] = uniform(rng);
        break;
      case Shape::kLeftChain:
        t.distances[i] = static_cast<double>(i + 1);
        break;
      case Shape::kRightChain:
        t.distances[i] = static_cast<double>(n - 1 - i);
        break;
    }
  }
  return t;
}

void stabilize_allocator() {
#if defined(__GLIBC__)
  constexpr int kLarge = 1 << 30;
  mallopt(M_MMAP_THRESHOLD, kLarge);
  mallopt(M_TRIM_THRESHOLD, kLarge);
#endif
}

double time_decode(const DistanceTuple& tuple, Engine engine, int repetitions) {
  if (repetitions < 1) throw UsageError("need at least one repetition");
  std::vector<double> seconds;
  seconds.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    BinaryTree tree = decode(tuple, engine);
    const auto stop = std::chrono::steady_clock::now();
    if (tree.size() != tuple.size()) throw Error("decoder lost words");
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  auto mid = seconds.begin() + static_cast<std::ptrdiff_t>(seconds.size() / 2);
  std::nth_element(seconds.begin(), mid, seconds.end());
  return *mid;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.repetitions < 1) throw UsageError("need at least one repetition");
  for (auto n : options.sizes) {
    if (n < 2) throw UsageError("benchmark sizes must be >= 2");
  }
  std::vector<BenchRow> rows;
  for (Shape shape : options.shapes) {
    for (std::size_t n : options.sizes) {
      const DistanceTuple tuple = make_bench_tuple(n, shape, options.seed);
      const BinaryTree reference = decode_stack(tuple);
      for (Engine engine : options.engines) {
        if (decode(tuple, engine) != reference)
          throw Error("engine " + std::string(engine_name(engine)) + " disagrees on " +
                      std::string(shape_name(shape)) + " n=" + std::to_string(n));
        rows.push_back({shape, engine, n, options.repetitions,
                        time_decode(tuple, engine, options.repetitions)});
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "shape,engine,n,repetitions,median_seconds,ratio_to_previous\n";
  std::map<std::pair<Shape, Engine>, double> previous;
  char buf[256];
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.shape, r.engine);
    std::string ratio;
    if (auto it = previous.find(key); it != previous.end() && it->second > 0) {
      std::snprintf(buf, sizeof buf, "%.3f", r.median_seconds / it->second);
      ratio = buf;
    }
    previous[key] = r.median_seconds;
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%d,%.9f,", std::string(shape_name(r.shape)).c_str(),
                  std::string(engine_name(r.engine)).c_str(), r.n, r.repetitions,
                  r.median_seconds);
    out += buf;
    out += ratio;
    out += '\n';
  }
  return out;
}

}  // namespace syndist
