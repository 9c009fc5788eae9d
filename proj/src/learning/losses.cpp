#include "syndist/learning/losses.hpp"

#include <cmath>
#include <string>

#include "syndist/errors.hpp"

namespace syndist::learning {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw UsageError("target has " + std::to_string(a.size()) + " distances, prediction " +
                     std::to_string(b.size()));
}

void check_targets(std::span<const int> targets, const Matrix& m) {
  if (static_cast<Eigen::Index>(targets.size()) != m.cols())
    throw UsageError("one target per column required");
  for (int t : targets) {
    if (t < 0 || t >= m.rows()) throw UsageError("label index outside the vocabulary");
  }
}

}  // namespace

std::string_view distance_loss_name(DistanceLoss loss) {
  return loss == DistanceLoss::kRank ? "rank" : "mse";
}

DistanceLoss parse_distance_loss(std::string_view name) {
  if (name == "rank") return DistanceLoss::kRank;
  if (name == "mse") return DistanceLoss::kMse;
  throw UsageError("unknown distance loss '" + std::string(name) + "' (expected rank or mse)");
}

VectorLoss rank_loss(std::span<const double> target, std::span<const double> predicted) {
  check_lengths(target, predicted);
  VectorLoss out;
  out.gradient.assign(predicted.size(), 0.0);
  const std::size_t n = target.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (target[i] == target[j]) continue;
      const double sign = target[i] > target[j] ? 1.0 : -1.0;
      const double hinge = 1.0 - sign * (predicted[i] - predicted[j]);
      if (hinge <= 0.0) continue;
      out.value += hinge;
      out.gradient[i] -= sign;
      out.gradient[j] += sign;
    }
  }
  return out;
}

VectorLoss mse_loss(std::span<const double> target, std::span<const double> predicted) {
  check_lengths(target, predicted);
  VectorLoss out;
  out.gradient.resize(predicted.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double diff = predicted[i] - target[i];
    out.value += diff * diff;
    out.gradient[i] = 2.0 * diff;
  }
  return out;
}

VectorLoss distance_loss(DistanceLoss kind, std::span<const double> target,
                         std::span<const double> predicted) {
  return kind == DistanceLoss::kRank ? rank_loss(target, predicted) : mse_loss(target, predicted);
}

Matrix softmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double shift = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - shift).exp();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

MatrixLoss label_loss(std::span<const int> targets, const Matrix& distributions) {
  check_targets(targets, distributions);
  MatrixLoss out;
  out.gradient = Matrix::Zero(distributions.rows(), distributions.cols());
  for (Eigen::Index c = 0; c < distributions.cols(); ++c) {
    if (std::abs(distributions.col(c).sum() - 1.0) > 1e-6)
      throw UsageError("column " + std::to_string(c) + " is not a probability distribution");
    const double p = distributions(targets[c], c);
    out.value -= std::log(p);
    out.gradient(targets[c], c) = -1.0 / p;
  }
  return out;
}

MatrixLoss softmax_cross_entropy(std::span<const int> targets, const Matrix& logits) {
  check_targets(targets, logits);
  MatrixLoss out;
  out.gradient = softmax(logits);
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double shift = logits.col(c).maxCoeff();
    const double log_norm = shift + std::log((logits.col(c).array() - shift).exp().sum());
    out.value += log_norm - logits(targets[c], c);
    out.gradient(targets[c], c) -= 1.0;
  }
  return out;
}

}  // namespace syndist::learning
