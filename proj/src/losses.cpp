#include "graphtron/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace graphtron {

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::logistic: return "logistic";
    case LossKind::smooth_hinge: return "smooth-hinge";
    case LossKind::hinge: return "hinge";
  }
  return "?";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "logistic") return LossKind::logistic;
  if (name == "smooth-hinge") return LossKind::smooth_hinge;
  if (name == "hinge") return LossKind::hinge;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "' (valid: logistic, smooth-hinge, hinge)");
}

double SurrogateLoss::smoothness(const Vector& x, std::size_t n_actions) const {
  return smoothness(x.squaredNorm(), n_actions);
}

double SurrogateLoss::smoothness(double sq, std::size_t n_actions) const {
  switch (kind) {
    case LossKind::logistic: return sq / std::log(static_cast<double>(n_actions));
    case LossKind::smooth_hinge: return 4.0 * sq;
    case LossKind::hinge: return 2.0 * sq;
  }
  return 0.0;
}

double Margins::margin(Action y) const { return scores[static_cast<Eigen::Index>(y)] - scores[static_cast<Eigen::Index>(best_other(y))]; }

Action Margins::best_other(Action y) const {
  Action best = (y == 0) ? 1 : 0;
  for (Eigen::Index k = 0; k < scores.size(); ++k) {
    if (static_cast<Action>(k) == y) continue;
    if (scores[k] > scores[static_cast<Eigen::Index>(best)]) best = static_cast<Action>(k);
  }
  return best;
}

Margins compute_margins(const Matrix& w, const Vector& x) {
  if (w.rows() < 2) throw std::invalid_argument("margins need at least two actions");
  if (w.cols() != x.size()) throw std::invalid_argument("feature dimension mismatch");
  Margins m;
  m.scores = w * x;
  Eigen::Index arg = 0;
  for (Eigen::Index k = 1; k < m.scores.size(); ++k)
    if (m.scores[k] > m.scores[arg]) arg = k;
  m.y_star = static_cast<Action>(arg);
  m.m_star = m.margin(m.y_star);
  return m;
}

double smooth_hinge_value(double m) {
  if (m <= 0.0) return 1.0 - 2.0 * m;
  if (m < 1.0) return (1.0 - m) * (1.0 - m);
  return 0.0;
}

double smooth_hinge_derivative(double m) {
  if (m <= 0.0) return -2.0;
  if (m < 1.0) return -2.0 * (1.0 - m);
  return 0.0;
}

namespace {

void check_label(const Margins& margins, Action y) {
  if (y >= static_cast<Action>(margins.scores.size()))
    throw std::out_of_range("label " + std::to_string(y) + " out of range");
}

double log_sum_exp(const Vector& s) {
  const double top = s.maxCoeff();
  return top + std::log((s.array() - top).exp().sum());
}

double kappa_hinge_value(double kappa, const Margins& margins, Action y) {
  if (margins.y_star == y && margins.m_star >= kappa) return 0.0;
  return std::max(1.0 - margins.margin(y), 0.0);
}

}  // namespace

double loss_value(const SurrogateLoss& loss, const Margins& margins, Action y) {
  check_label(margins, y);
  switch (loss.kind) {
    case LossKind::logistic: {
      const double k = static_cast<double>(margins.scores.size());
      return (log_sum_exp(margins.scores) - margins.scores[static_cast<Eigen::Index>(y)]) / std::log(k);
    }
    case LossKind::smooth_hinge: return smooth_hinge_value(margins.margin(y));
    case LossKind::hinge: return kappa_hinge_value(loss.kappa, margins, y);
  }
  return 0.0;
}

double loss_value(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y) {
  return loss_value(loss, compute_margins(w, x), y);
}

double round_loss(const SurrogateLoss& loss, const Margins& at_iterate, const Matrix& w, const Vector& x, Action y) {
  const Margins here = compute_margins(w, x);
  if (loss.kind != LossKind::hinge) return loss_value(loss, here, y);
  if (at_iterate.y_star == y && at_iterate.m_star >= loss.kappa) return 0.0;
  return std::max(1.0 - here.margin(y), 0.0);
}

Matrix loss_gradient(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y) {
  const Margins margins = compute_margins(w, x);
  check_label(margins, y);
  Matrix g = Matrix::Zero(w.rows(), w.cols());
  const auto row = static_cast<Eigen::Index>(y);
  switch (loss.kind) {
    case LossKind::logistic: {
      const double top = margins.scores.maxCoeff();
      Vector q = (margins.scores.array() - top).exp();
      q /= q.sum();
      q[row] -= 1.0;
      g.noalias() = q * x.transpose() / std::log(static_cast<double>(w.rows()));
      break;
    }
    case LossKind::smooth_hinge: {
      const double d = smooth_hinge_derivative(margins.margin(y));
      if (d != 0.0) {
        g.row(row) = d * x.transpose();
        g.row(static_cast<Eigen::Index>(margins.best_other(y))) = -d * x.transpose();
      }
      break;
    }
    case LossKind::hinge:
      if (kappa_hinge_value(loss.kappa, margins, y) > 0.0) {
        g.row(row) = -x.transpose();
        g.row(static_cast<Eigen::Index>(margins.best_other(y))) = x.transpose();
      }
      break;
  }
  return g;
}

double gap_value(const SurrogateLoss& loss, const Margins& margins) {
  return std::clamp(loss_value(loss, margins, margins.y_star), 0.0, 1.0);
}

double gap_value(const SurrogateLoss& loss, const Matrix& w, const Vector& x) {
  return gap_value(loss, compute_margins(w, x));
}

double plain_hinge_value(const Margins& margins, Action y) {
  check_label(margins, y);
  return std::max(1.0 - margins.margin(y), 0.0);
}

Matrix plain_hinge_gradient(const Margins& margins, const Vector& x, Action y) {
  check_label(margins, y);
  Matrix g = Matrix::Zero(margins.scores.size(), x.size());
  if (margins.margin(y) < 1.0) {
    g.row(static_cast<Eigen::Index>(y)) = -x.transpose();
    g.row(static_cast<Eigen::Index>(margins.best_other(y))) = x.transpose();
  }
  return g;
}

RegularityReport check_regularity(const SurrogateLoss& loss, std::size_t n_actions, std::size_t dim,
                                  std::size_t n_samples, Rng& rng) {
  if (n_actions < 2) throw std::invalid_argument("regularity check needs at least two actions");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_other(0, n_actions - 2);
  const double k = static_cast<double>(n_actions);

  RegularityReport report;
  report.samples = n_samples;
  std::size_t mixing_bad = 0;
  std::size_t gradient_bad = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    Matrix w(static_cast<Eigen::Index>(n_actions), static_cast<Eigen::Index>(dim));
    Vector x(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);

    const Margins margins = compute_margins(w, x);
    Action y = pick_other(rng);
    if (y >= margins.y_star) ++y;

    const double wrong = loss_value(loss, margins, y);
    const double right = loss_value(loss, margins, margins.y_star);
    if ((k - 1.0) / k * wrong + right / k < 1.0 - kRegularityTolerance) ++mixing_bad;

    const double smooth = loss.smoothness(x, n_actions);
    bool bad = false;
    for (Action label : {y, margins.y_star}) {
      const double value = loss_value(loss, margins, label);
      const double grad_sq = loss_gradient(loss, w, x, label).squaredNorm();
      if (grad_sq > 2.0 * smooth * value + kRegularityTolerance) bad = true;
      if (value > 0.0) report.max_gradient_ratio = std::max(report.max_gradient_ratio, grad_sq / (2.0 * smooth * value));
    }
    if (bad) ++gradient_bad;
  }
  if (n_samples > 0) {
    report.mixing_violation_rate = static_cast<double>(mixing_bad) / static_cast<double>(n_samples);
    report.gradient_violation_rate = static_cast<double>(gradient_bad) / static_cast<double>(n_samples);
  }
  return report;
}

}  // namespace graphtron
