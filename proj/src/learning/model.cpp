#include "syndist/learning/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "syndist/errors.hpp"

namespace syndist::learning {

using Vector = Eigen::VectorXd;

void Dimensions::validate() const {
  for (int v : {word_vocab, tag_vocab, word_labels, split_labels, embed, hidden, conv, ff_hidden})
    if (v <= 0) throw UsageError("model dimensions must be positive");
}

namespace {

template <typename Self, typename Fn>
void visit_tensors(Self& p, Fn&& fn) {
  auto lstm = [&](const std::string& prefix, auto& w) {
    fn(prefix + ".input", w.input);
    fn(prefix + ".recurrent", w.recurrent);
    fn(prefix + ".bias", w.bias);
  };
  auto head = [&](const std::string& prefix, auto& h) {
    fn(prefix + ".w1", h.w1);
    fn(prefix + ".b1", h.b1);
    fn(prefix + ".w2", h.w2);
    fn(prefix + ".b2", h.b2);
  };
  fn("word_embedding", p.word_embedding);
  fn("tag_embedding", p.tag_embedding);
  lstm("word_forward", p.word_forward);
  lstm("word_backward", p.word_backward);
  head("word_label_head", p.word_label_head);
  fn("conv_weight", p.conv_weight);
  fn("conv_bias", p.conv_bias);
  lstm("split_forward", p.split_forward);
  lstm("split_backward", p.split_backward);
  head("distance_head", p.distance_head);
  head("split_label_head", p.split_label_head);
}

LstmWeights lstm_zeros(int in, int h) {
  return {Matrix::Zero(4 * h, in), Matrix::Zero(4 * h, h), Matrix::Zero(4 * h, 1)};
}

FeedForward head_zeros(int in, int hidden, int out) {
  return {Matrix::Zero(hidden, in), Matrix::Zero(hidden, 1), Matrix::Zero(out, hidden),
          Matrix::Zero(out, 1)};
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

LstmCache lstm_forward(const LstmWeights& w, const Matrix& x, bool reverse) {
  const Eigen::Index h = w.recurrent.cols();
  const Eigen::Index steps = x.cols();
  LstmCache c;
  c.inputs = x;
  c.reverse = reverse;
  c.gates.resize(4 * h, steps);
  c.cells.resize(h, steps);
  c.cell_tanh.resize(h, steps);
  c.hidden.resize(h, steps);

  Matrix proj = w.input * x;
  proj.colwise() += w.bias.col(0);
  Vector h_prev = Vector::Zero(h);
  Vector c_prev = Vector::Zero(h);
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = reverse ? steps - 1 - s : s;
    Vector a = proj.col(t) + w.recurrent * h_prev;
    for (Eigen::Index k = 0; k < h; ++k) {
      a(k) = sigmoid(a(k));
      a(h + k) = sigmoid(a(h + k));
      a(2 * h + k) = std::tanh(a(2 * h + k));
      a(3 * h + k) = sigmoid(a(3 * h + k));
    }
    Vector cell = a.segment(h, h).cwiseProduct(c_prev) +
                  a.segment(0, h).cwiseProduct(a.segment(2 * h, h));
    Vector ct = cell.array().tanh();
    h_prev = a.segment(3 * h, h).cwiseProduct(ct);
    c_prev = cell;
    c.gates.col(t) = a;
    c.cells.col(t) = cell;
    c.cell_tanh.col(t) = ct;
    c.hidden.col(t) = h_prev;
  }
  return c;
}

// Returns the gradient with respect to the inputs.
Matrix lstm_backward(const LstmWeights& w, const LstmCache& c, const Matrix& d_hidden,
                     LstmWeights& g) {
  const Eigen::Index h = w.recurrent.cols();
  const Eigen::Index steps = c.inputs.cols();
  Matrix d_gates(4 * h, steps);
  Vector dh_next = Vector::Zero(h);
  Vector dc_next = Vector::Zero(h);
  const Vector zero = Vector::Zero(h);

  for (Eigen::Index s = steps; s-- > 0;) {
    const Eigen::Index t = c.reverse ? steps - 1 - s : s;
    const Eigen::Index prev = c.reverse ? t + 1 : t - 1;
    const auto gate = c.gates.col(t);
    const auto in_g = gate.segment(0, h);
    const auto forget = gate.segment(h, h);
    const auto cand = gate.segment(2 * h, h);
    const auto out_g = gate.segment(3 * h, h);
    const auto ct = c.cell_tanh.col(t);

    Vector dh = d_hidden.col(t) + dh_next;
    Vector d_out = dh.cwiseProduct(ct);
    Vector dc = dh.cwiseProduct(out_g).cwiseProduct((1.0 - ct.array().square()).matrix()) + dc_next;
    const Vector c_prev = s > 0 ? Vector(c.cells.col(prev)) : zero;
    const Vector h_prev = s > 0 ? Vector(c.hidden.col(prev)) : zero;

    Vector da(4 * h);
    da.segment(0, h) = dc.cwiseProduct(cand).array() * in_g.array() * (1.0 - in_g.array());
    da.segment(h, h) = dc.cwiseProduct(c_prev).array() * forget.array() * (1.0 - forget.array());
    da.segment(2 * h, h) = dc.cwiseProduct(in_g).array() * (1.0 - cand.array().square());
    da.segment(3 * h, h) = d_out.array() * out_g.array() * (1.0 - out_g.array());
    dc_next = dc.cwiseProduct(forget);

    d_gates.col(t) = da;
    g.recurrent.noalias() += da * h_prev.transpose();
    dh_next.noalias() = w.recurrent.transpose() * da;
  }
  g.input.noalias() += d_gates * c.inputs.transpose();
  g.bias += d_gates.rowwise().sum();
  return w.input.transpose() * d_gates;
}

HeadCache head_forward(const FeedForward& f, const Matrix& x) {
  HeadCache c;
  c.inputs = x;
  Matrix z = f.w1 * x;
  z.colwise() += f.b1.col(0);
  c.activations = z.array().tanh();
  c.outputs = f.w2 * c.activations;
  c.outputs.colwise() += f.b2.col(0);
  return c;
}

Matrix head_backward(const FeedForward& f, const HeadCache& c, const Matrix& d_out,
                     FeedForward& g) {
  g.w2.noalias() += d_out * c.activations.transpose();
  g.b2 += d_out.rowwise().sum();
  Matrix dz = (f.w2.transpose() * d_out).array() * (1.0 - c.activations.array().square());
  g.w1.noalias() += dz * c.inputs.transpose();
  g.b1 += dz.rowwise().sum();
  return f.w1.transpose() * dz;
}

Matrix bidirectional(const LstmCache& fwd, const LstmCache& bwd) {
  Matrix out(fwd.hidden.rows() + bwd.hidden.rows(), fwd.hidden.cols());
  out << fwd.hidden, bwd.hidden;
  return out;
}

}  // namespace

ModelParams ModelParams::zeros(const Dimensions& d) {
  d.validate();
  ModelParams p;
  p.dims = d;
  p.word_embedding = Matrix::Zero(d.embed, d.word_vocab);
  p.tag_embedding = Matrix::Zero(d.embed, d.tag_vocab);
  p.word_forward = p.word_backward = lstm_zeros(2 * d.embed, d.hidden);
  p.word_label_head = head_zeros(2 * d.hidden, d.ff_hidden, d.word_labels);
  p.conv_weight = Matrix::Zero(d.conv, 4 * d.hidden);
  p.conv_bias = Matrix::Zero(d.conv, 1);
  p.split_forward = p.split_backward = lstm_zeros(d.conv, d.hidden);
  p.distance_head = head_zeros(2 * d.hidden, d.ff_hidden, 1);
  p.split_label_head = head_zeros(2 * d.hidden, d.ff_hidden, d.split_labels);
  return p;
}

ModelParams ModelParams::random(const Dimensions& d, std::uint64_t seed) {
  ModelParams p = zeros(d);
  std::mt19937_64 rng(seed);
  for (auto& [name, tensor] : p.tensors()) {
    const bool bias = name.ends_with("bias") || name.ends_with(".b1") || name.ends_with(".b2");
    if (bias) continue;
    const double fan_in = name.ends_with("embedding") ? static_cast<double>(tensor->rows())
                                                       : static_cast<double>(tensor->cols());
    std::uniform_real_distribution<double> dist(-1.0 / std::sqrt(fan_in), 1.0 / std::sqrt(fan_in));
    for (Eigen::Index j = 0; j < tensor->cols(); ++j)
      for (Eigen::Index i = 0; i < tensor->rows(); ++i) (*tensor)(i, j) = dist(rng);
  }
  // Forget-gate bias starts at 1.
  for (auto* w : {&p.word_forward, &p.word_backward, &p.split_forward, &p.split_backward})
    w->bias.middleRows(d.hidden, d.hidden).setOnes();
  return p;
}

std::vector<NamedTensor> ModelParams::tensors() {
  std::vector<NamedTensor> out;
  visit_tensors(*this, [&](std::string name, Matrix& m) { out.push_back({std::move(name), &m}); });
  return out;
}

std::vector<ConstNamedTensor> ModelParams::tensors() const {
  std::vector<ConstNamedTensor> out;
  visit_tensors(*this,
                [&](std::string name, const Matrix& m) { out.push_back({std::move(name), &m}); });
  return out;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += static_cast<std::size_t>(t.value->size());
  return n;
}

ForwardResult forward(const ModelParams& p, std::span<const int> words, std::span<const int> tags) {
  const auto n = static_cast<Eigen::Index>(words.size());
  if (n == 0) throw UsageError("forward needs at least one word");
  if (tags.size() != words.size()) throw UsageError("one tag per word required");
  const int e = p.dims.embed;

  ForwardResult r;
  auto& c = r.cache;
  c.words.assign(words.begin(), words.end());
  c.tags.assign(tags.begin(), tags.end());
  c.embedded.resize(2 * e, n);
  for (Eigen::Index t = 0; t < n; ++t) {
    if (words[t] < 0 || words[t] >= p.dims.word_vocab) throw UsageError("word index out of range");
    if (tags[t] < 0 || tags[t] >= p.dims.tag_vocab) throw UsageError("tag index out of range");
    c.embedded.col(t).head(e) = p.word_embedding.col(words[t]);
    c.embedded.col(t).tail(e) = p.tag_embedding.col(tags[t]);
  }

  c.word_fwd = lstm_forward(p.word_forward, c.embedded, false);
  c.word_bwd = lstm_forward(p.word_backward, c.embedded, true);
  c.word_states = bidirectional(c.word_fwd, c.word_bwd);
  c.word_head = head_forward(p.word_label_head, c.word_states);
  r.word_label_probs = softmax(c.word_head.outputs);

  if (n == 1) {
    r.split_label_probs.resize(p.dims.split_labels, 0);
    return r;
  }

  const Eigen::Index two_h = c.word_states.rows();
  c.conv_inputs.resize(2 * two_h, n - 1);
  c.conv_inputs.topRows(two_h) = c.word_states.leftCols(n - 1);
  c.conv_inputs.bottomRows(two_h) = c.word_states.rightCols(n - 1);
  Matrix pre = p.conv_weight * c.conv_inputs;
  pre.colwise() += p.conv_bias.col(0);
  c.conv_out = pre.array().tanh();

  c.split_fwd = lstm_forward(p.split_forward, c.conv_out, false);
  c.split_bwd = lstm_forward(p.split_backward, c.conv_out, true);
  c.split_states = bidirectional(c.split_fwd, c.split_bwd);
  c.distance_head = head_forward(p.distance_head, c.split_states);
  c.split_head = head_forward(p.split_label_head, c.split_states);

  r.distances.assign(c.distance_head.outputs.data(), c.distance_head.outputs.data() + (n - 1));
  r.split_label_probs = softmax(c.split_head.outputs);
  return r;
}

LossBreakdown loss_and_gradient(const ModelParams& p, std::span<const int> words,
                                std::span<const int> tags, const Targets& targets,
                                DistanceLoss objective, ModelParams* grads) {
  const std::size_t n = words.size();
  if (targets.word_labels.size() != n || targets.split_labels.size() + 1 != n ||
      targets.distances.size() + 1 != n)
    throw UsageError("targets do not match the sentence length");

  ForwardResult r = forward(p, words, tags);
  const auto& c = r.cache;
  LossBreakdown loss;

  const MatrixLoss word_ce = softmax_cross_entropy(targets.word_labels, c.word_head.outputs);
  loss.label += word_ce.value;
  MatrixLoss split_ce;
  VectorLoss dist;
  if (n > 1) {
    split_ce = softmax_cross_entropy(targets.split_labels, c.split_head.outputs);
    loss.label += split_ce.value;
    dist = distance_loss(objective, targets.distances, r.distances);
    loss.distance = dist.value;
  }
  if (grads == nullptr) return loss;

  ModelParams& g = *grads;
  Matrix d_word_states = head_backward(p.word_label_head, c.word_head, word_ce.gradient,
                                       g.word_label_head);
  if (n > 1) {
    const auto m = static_cast<Eigen::Index>(n - 1);
    const Matrix d_dist = Eigen::Map<const Matrix>(dist.gradient.data(), 1, m);
    Matrix d_split_states =
        head_backward(p.distance_head, c.distance_head, d_dist, g.distance_head);
    d_split_states +=
        head_backward(p.split_label_head, c.split_head, split_ce.gradient, g.split_label_head);

    const Eigen::Index h = p.dims.hidden;
    Matrix d_conv_out =
        lstm_backward(p.split_forward, c.split_fwd, d_split_states.topRows(h), g.split_forward);
    d_conv_out += lstm_backward(p.split_backward, c.split_bwd, d_split_states.bottomRows(h),
                                g.split_backward);

    Matrix d_pre = d_conv_out.array() * (1.0 - c.conv_out.array().square());
    g.conv_weight.noalias() += d_pre * c.conv_inputs.transpose();
    g.conv_bias += d_pre.rowwise().sum();
    Matrix d_conv_in = p.conv_weight.transpose() * d_pre;
    const Eigen::Index two_h = d_word_states.rows();
    d_word_states.leftCols(m) += d_conv_in.topRows(two_h);
    d_word_states.rightCols(m) += d_conv_in.bottomRows(two_h);
  }

  const Eigen::Index h = p.dims.hidden;
  Matrix d_embedded =
      lstm_backward(p.word_forward, c.word_fwd, d_word_states.topRows(h), g.word_forward);
  d_embedded +=
      lstm_backward(p.word_backward, c.word_bwd, d_word_states.bottomRows(h), g.word_backward);

  const int e = p.dims.embed;
  for (std::size_t t = 0; t < n; ++t) {
    const auto col = static_cast<Eigen::Index>(t);
    g.word_embedding.col(c.words[t]) += d_embedded.col(col).head(e);
    g.tag_embedding.col(c.tags[t]) += d_embedded.col(col).tail(e);
  }
  return loss;
}

}  // namespace syndist::learning
