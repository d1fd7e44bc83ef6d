#include "graphtron/oco.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace graphtron {

OcoMode parse_oco_mode(std::string_view name) {
  if (name == "adaptive") return OcoMode::adaptive_unprojected;
  if (name == "projected") return OcoMode::projected;
  throw std::invalid_argument("unknown OCO mode '" + std::string(name) + "' (valid: adaptive, projected)");
}

std::string_view to_string(OcoMode mode) {
  return mode == OcoMode::projected ? "projected" : "adaptive";
}

OnlineGradientDescent::OnlineGradientDescent(std::size_t n_actions, std::size_t dim, OcoMode mode, double radius,
                                             double epsilon)
    : w_(Matrix::Zero(static_cast<Eigen::Index>(n_actions), static_cast<Eigen::Index>(dim))),
      mode_(mode),
      radius_(radius),
      epsilon_(epsilon) {
  if (n_actions == 0 || dim == 0) throw std::invalid_argument("OCO needs a non-empty weight matrix");
  if (mode == OcoMode::projected && !(radius > 0.0)) throw std::invalid_argument("projection radius must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

void OnlineGradientDescent::update(const Matrix& g_hat) {
  if (g_hat.rows() != w_.rows() || g_hat.cols() != w_.cols()) throw std::invalid_argument("gradient shape mismatch");
  if (!g_hat.allFinite()) throw std::invalid_argument("non-finite gradient entry");
  const double sq = g_hat.squaredNorm();
  if (sq == 0.0) return;
  grad_sq_sum_ += sq;
  w_ -= g_hat / std::sqrt(epsilon_ + grad_sq_sum_);
  if (mode_ == OcoMode::projected) {
    const double norm = w_.norm();
    if (norm > radius_) w_ *= radius_ / norm;
  }
}

}  // namespace graphtron
