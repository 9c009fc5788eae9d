#pragma once

#include <cstdint>
#include <vector>

#include "syndist/learning/model.hpp"

namespace syndist::learning {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 1e-6;  // decoupled
};

/// Adam with decoupled weight decay. Moments mirror the parameter tensors.
class Adam {
 public:
  Adam(const ModelParams& params, AdamConfig config);

  void step(ModelParams& params, const ModelParams& grads);

  std::int64_t steps() const noexcept { return step_; }
  const AdamConfig& config() const noexcept { return config_; }

 private:
  AdamConfig config_;
  std::vector<Matrix> first_;
  std::vector<Matrix> second_;
  std::int64_t step_ = 0;
};

/// Scales `grads` in place so their global L2 norm is at most `max_norm`.
/// Returns the norm before scaling. A non-positive `max_norm` disables it.
double clip_global_norm(ModelParams& grads, double max_norm);

}  // namespace syndist::learning
