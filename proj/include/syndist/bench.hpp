#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "syndist/codec.hpp"

namespace syndist {

enum class Shape { kRandom, kLeftChain, kRightChain };

std::string_view shape_name(Shape shape);
Shape parse_shape(std::string_view name);

/// Decoder input over n words. Left chains have increasing distances (the
/// worst case for a linear argmax scan), right chains decreasing ones, and
/// random inputs i.i.d. uniform values.
DistanceTuple make_bench_tuple(std::size_t n, Shape shape, std::uint64_t seed);

struct BenchRow {
  Shape shape;
  Engine engine;
  std::size_t n;
  int repetitions;
  double median_seconds;
};

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::vector<Engine> engines{Engine::kScan, Engine::kRmq, Engine::kStack};
  std::vector<Shape> shapes{Shape::kRandom, Shape::kLeftChain, Shape::kRightChain};
  int repetitions = 20;
  std::uint64_t seed = 1;
};

/// Median wall time of one decode per (shape, size, engine). Throws
/// UsageError if sizes < 2 or fewer than one repetition, and Error if the
/// engines disagree on any benchmarked input.
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Keeps freed heap memory mapped between decodes so repeated timings do not
/// pay fresh page faults whose cost jumps with allocation size. Process-wide
/// and glibc-only (a no-op elsewhere); call once before timing.
void stabilize_allocator();

/// Median seconds of `engine` decoding `tuple`, over `repetitions` runs.
double time_decode(const DistanceTuple& tuple, Engine engine, int repetitions);

/// CSV with header `shape,engine,n,repetitions,median_seconds,ratio_to_previous`;
/// the ratio compares with the previous size of the same shape and engine.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace syndist
