#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "syndist/learning/losses.hpp"

namespace syndist::learning {

struct Dimensions {
  int word_vocab = 0;
  int tag_vocab = 0;
  int word_labels = 0;   // unary-label vocabulary, empty label included
  int split_labels = 0;  // split-label vocabulary, empty label included
  int embed = 16;        // per embedding table; the recurrent input is 2 * embed
  int hidden = 32;       // per direction
  int conv = 32;         // convolution channels
  int ff_hidden = 32;    // inner width of every two-layer head

  void validate() const;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// One direction of a single-layer LSTM. Gate rows are ordered i, f, g, o.
struct LstmWeights {
  Matrix input;      // 4h x in
  Matrix recurrent;  // 4h x h
  Matrix bias;       // 4h x 1
};

/// Two-layer head: out = w2 * tanh(w1 * x + b1) + b2.
struct FeedForward {
  Matrix w1, b1, w2, b2;
};

struct NamedTensor {
  std::string name;
  Matrix* value;
};

struct ConstNamedTensor {
  std::string name;
  const Matrix* value;
};

/// Learnable tensors of the distance network. Embedding tables store one
/// column per vocabulary entry.
struct ModelParams {
  Dimensions dims;
  Matrix word_embedding;  // e x V_w
  Matrix tag_embedding;   // e x V_t
  LstmWeights word_forward, word_backward;
  FeedForward word_label_head;
  Matrix conv_weight;  // m x 4h, applied to [h_i; h_{i+1}]
  Matrix conv_bias;    // m x 1
  LstmWeights split_forward, split_backward;
  FeedForward distance_head;  // 1 output, no output activation
  FeedForward split_label_head;

  /// Uniform initialization scaled by fan-in, deterministic in `seed`.
  static ModelParams random(const Dimensions& dims, std::uint64_t seed);
  static ModelParams zeros(const Dimensions& dims);

  /// Every tensor in checkpoint order.
  std::vector<NamedTensor> tensors();
  std::vector<ConstNamedTensor> tensors() const;

  std::size_t parameter_count() const;
};

struct LstmCache {
  Matrix inputs;  // in x T
  Matrix gates;   // 4h x T, post-activation
  Matrix cells;   // h x T
  Matrix cell_tanh;
  Matrix hidden;  // h x T
  bool reverse = false;
};

struct HeadCache {
  Matrix inputs;
  Matrix activations;  // tanh layer
  Matrix outputs;      // pre-softmax
};

struct ForwardCache {
  std::vector<int> words, tags;
  Matrix embedded;  // 2e x n
  LstmCache word_fwd, word_bwd;
  Matrix word_states;  // 2h x n
  HeadCache word_head;
  Matrix conv_inputs;  // 4h x (n-1)
  Matrix conv_out;     // m x (n-1), post tanh
  LstmCache split_fwd, split_bwd;
  Matrix split_states;  // 2h x (n-1)
  HeadCache distance_head;
  HeadCache split_head;
};

struct ForwardResult {
  std::vector<double> distances;  // n - 1
  Matrix word_label_probs;        // word_labels x n
  Matrix split_label_probs;       // split_labels x (n-1)
  ForwardCache cache;
};

/// Embeddings -> word BiLSTM -> word-label head; width-2 convolution over
/// adjacent word states -> split BiLSTM -> distance and split-label heads.
/// Throws UsageError on n == 0 or out-of-vocabulary indices.
ForwardResult forward(const ModelParams& params, std::span<const int> words,
                      std::span<const int> tags);

/// Supervision for one sentence.
struct Targets {
  std::vector<double> distances;
  std::vector<int> word_labels;
  std::vector<int> split_labels;
};

struct LossBreakdown {
  double distance = 0;  // rank or mse, depending on the objective
  double label = 0;     // word-level + split-level cross-entropy
  double total() const { return distance + label; }
};

/// Total loss of one sentence. When `grads` is non-null the gradient is
/// accumulated into it (not overwritten).
LossBreakdown loss_and_gradient(const ModelParams& params, std::span<const int> words,
                                std::span<const int> tags, const Targets& targets,
                                DistanceLoss objective, ModelParams* grads);

}  // namespace syndist::learning
