#include "syndist/learning/optimizer.hpp"

#include <cmath>

namespace syndist::learning {

Adam::Adam(const ModelParams& params, AdamConfig config) : config_(config) {
  for (const auto& t : params.tensors()) {
    first_.push_back(Matrix::Zero(t.value->rows(), t.value->cols()));
    second_.push_back(Matrix::Zero(t.value->rows(), t.value->cols()));
  }
}

void Adam::step(ModelParams& params, const ModelParams& grads) {
  ++step_;
  const auto& c = config_;
  const double correction1 = 1.0 - std::pow(c.beta1, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(c.beta2, static_cast<double>(step_));
  auto values = params.tensors();
  const auto gradients = grads.tensors();
  for (std::size_t k = 0; k < values.size(); ++k) {
    Matrix& w = *values[k].value;
    const Matrix& g = *gradients[k].value;
    first_[k] = c.beta1 * first_[k] + (1.0 - c.beta1) * g;
    second_[k] = c.beta2 * second_[k] + (1.0 - c.beta2) * g.cwiseProduct(g);
    const auto m_hat = first_[k].array() / correction1;
    const auto v_hat = second_[k].array() / correction2;
    w.array() -= c.learning_rate * (m_hat / (v_hat.sqrt() + c.epsilon) + c.weight_decay * w.array());
  }
}

double clip_global_norm(ModelParams& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& t : grads.tensors()) sq += t.value->squaredNorm();
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& t : grads.tensors()) *t.value *= scale;
  }
  return norm;
}

}  // namespace syndist::learning
