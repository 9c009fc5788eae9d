#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "syndist/treebank.hpp"

namespace syndist {

struct PcfgOptions {
  std::size_t sentences = 2000;
  std::size_t min_length = 2;
  std::size_t max_length = 20;
  std::uint64_t seed = 1;
};

/// Samples trees from a small English-like PCFG (about 110 word types, PTB
/// tag set). Output includes unary chains (`SBAR -> S`, `NP -> PRP`) and
/// n-ary nodes. Deterministic in `options.seed`.
std::vector<NaryTree> generate_pcfg_corpus(const PcfgOptions& options);

}  // namespace syndist
