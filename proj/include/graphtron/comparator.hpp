#pragma once

#include <span>
#include <vector>

#include "graphtron/losses.hpp"
#include "graphtron/protocol.hpp"

namespace graphtron {

// The loss a fixed comparator is scored on. The kappa-hinge depends on the
// learner's own weights, so comparators use the plain multiclass hinge,
// which upper-bounds it.
double comparator_loss(const SurrogateLoss& loss, const Matrix& u, const Vector& x, Action y);

struct ComparatorFit {
  Matrix u;
  double total_loss = 0.0;  // sum_t loss_t(U); an upper bound on the minimum over the ball
  double norm = 0.0;        // ||U||_F
};

struct ComparatorOptions {
  std::size_t epochs = 20;
  double radius = 100.0;
};

// Projected stochastic gradient passes over the realized sequence in order,
// with step 1 / (||x_t||^2 sqrt(epoch)). Returns the last iterate.
ComparatorFit offline_comparator(std::span<const RealizedExample> sequence, std::size_t n_actions, std::size_t dim,
                                 const SurrogateLoss& loss, const ComparatorOptions& options = {});

struct RegretReport {
  std::size_t t = 0;
  std::size_t mistakes = 0;        // M_t
  double comparator_loss = 0.0;    // sum_{s<=t} loss_s(U)
  double surrogate_regret = 0.0;   // M_t - comparator_loss
  double comparator_norm = 0.0;
};

// Surrogate regret of the realized mistakes against `fit`, at each requested round.
std::vector<RegretReport> surrogate_regret(std::span<const RealizedExample> sequence, const ComparatorFit& fit,
                                           const SurrogateLoss& loss, std::size_t dim,
                                           std::span<const std::size_t> at);

}  // namespace graphtron
