#include "graphtron/comparator.hpp"

#include <cmath>
#include <stdexcept>

namespace graphtron {

double comparator_loss(const SurrogateLoss& loss, const Matrix& u, const Vector& x, Action y) {
  const Margins margins = compute_margins(u, x);
  return loss.kind == LossKind::hinge ? plain_hinge_value(margins, y) : loss_value(loss, margins, y);
}

namespace {

Matrix comparator_gradient(const SurrogateLoss& loss, const Matrix& u, const Vector& x, Action y) {
  if (loss.kind == LossKind::hinge) return plain_hinge_gradient(compute_margins(u, x), x, y);
  return loss_gradient(loss, u, x, y);
}

}  // namespace

ComparatorFit offline_comparator(std::span<const RealizedExample> sequence, std::size_t n_actions, std::size_t dim,
                                 const SurrogateLoss& loss, const ComparatorOptions& options) {
  if (!(options.radius > 0.0)) throw std::invalid_argument("comparator radius must be positive");
  ComparatorFit fit;
  fit.u = Matrix::Zero(static_cast<Eigen::Index>(n_actions), static_cast<Eigen::Index>(dim));

  std::vector<Vector> xs;
  xs.reserve(sequence.size());
  for (const RealizedExample& ex : sequence) xs.push_back(densify(ex, dim));

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    const double decay = 1.0 / std::sqrt(static_cast<double>(epoch));
    for (std::size_t t = 0; t < sequence.size(); ++t) {
      const double sq = xs[t].squaredNorm();
      if (sq == 0.0) continue;
      fit.u -= (decay / sq) * comparator_gradient(loss, fit.u, xs[t], sequence[t].label);
      const double norm = fit.u.norm();
      if (norm > options.radius) fit.u *= options.radius / norm;
    }
  }

  for (std::size_t t = 0; t < sequence.size(); ++t) fit.total_loss += comparator_loss(loss, fit.u, xs[t], sequence[t].label);
  fit.norm = fit.u.norm();
  return fit;
}

std::vector<RegretReport> surrogate_regret(std::span<const RealizedExample> sequence, const ComparatorFit& fit,
                                           const SurrogateLoss& loss, std::size_t dim,
                                           std::span<const std::size_t> at) {
  std::vector<RegretReport> reports;
  RegretReport acc;
  acc.comparator_norm = fit.norm;
  auto next = at.begin();
  for (std::size_t t = 1; t <= sequence.size() && next != at.end(); ++t) {
    const RealizedExample& ex = sequence[t - 1];
    acc.t = t;
    acc.mistakes += ex.mistake ? 1 : 0;
    acc.comparator_loss += comparator_loss(loss, fit.u, densify(ex, dim), ex.label);
    acc.surrogate_regret = static_cast<double>(acc.mistakes) - acc.comparator_loss;
    while (next != at.end() && *next <= t) {
      if (*next == t) reports.push_back(acc);
      ++next;
    }
  }
  return reports;
}

}  // namespace graphtron
