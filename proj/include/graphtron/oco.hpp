#pragma once

#include <string_view>

#include "graphtron/types.hpp"

namespace graphtron {

enum class OcoMode { adaptive_unprojected, projected };

OcoMode parse_oco_mode(std::string_view name);
std::string_view to_string(OcoMode mode);

// Online gradient descent with step (epsilon + sum_j ||g_j||_F^2)^{-1/2},
// optionally projected onto the Frobenius ball of the given radius.
class OnlineGradientDescent {
 public:
  OnlineGradientDescent(std::size_t n_actions, std::size_t dim, OcoMode mode = OcoMode::adaptive_unprojected,
                        double radius = 1.0, double epsilon = 1e-8);

  const Matrix& weights() const { return w_; }
  double grad_sq_sum() const { return grad_sq_sum_; }
  OcoMode mode() const { return mode_; }
  double radius() const { return radius_; }

  // Throws std::invalid_argument on non-finite entries.
  void update(const Matrix& g_hat);

 private:
  Matrix w_;
  double grad_sq_sum_ = 0.0;
  OcoMode mode_;
  double radius_;
  double epsilon_;
};

}  // namespace graphtron
