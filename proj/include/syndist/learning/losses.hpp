#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace syndist::learning {

using Matrix = Eigen::MatrixXd;

struct VectorLoss {
  double value = 0;
  std::vector<double> gradient;  // with respect to the predictions
};

struct MatrixLoss {
  double value = 0;
  Matrix gradient;
};

enum class DistanceLoss { kRank, kMse };

std::string_view distance_loss_name(DistanceLoss loss);
DistanceLoss parse_distance_loss(std::string_view name);

/// Pairwise hinge: sum over i < j with d_i != d_j of
/// max(0, 1 - sign(d_i - d_j) * (p_i - p_j)). Tied targets contribute nothing
/// and the subgradient at the kink is 0.
VectorLoss rank_loss(std::span<const double> target, std::span<const double> predicted);

/// Sum of squared errors; gradient 2 (p - d).
VectorLoss mse_loss(std::span<const double> target, std::span<const double> predicted);

VectorLoss distance_loss(DistanceLoss kind, std::span<const double> target,
                         std::span<const double> predicted);

/// Column-wise softmax.
Matrix softmax(const Matrix& logits);

/// Summed negative log-likelihood of `targets` under column distributions.
/// Gradient is with respect to the probabilities. Throws UsageError when a
/// column does not sum to 1 (within 1e-6) or a target is out of range.
MatrixLoss label_loss(std::span<const int> targets, const Matrix& distributions);

/// Same loss evaluated on softmax(logits); gradient with respect to the logits.
MatrixLoss softmax_cross_entropy(std::span<const int> targets, const Matrix& logits);

}  // namespace syndist::learning
