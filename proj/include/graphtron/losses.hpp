#pragma once

#include <string_view>

#include "graphtron/types.hpp"

namespace graphtron {

enum class LossKind { logistic, smooth_hinge, hinge };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

struct SurrogateLoss {
  LossKind kind = LossKind::smooth_hinge;
  // Only used by the hinge: the margin above which a correct argmax costs nothing.
  double kappa = 0.5;

  // Constant L(x) in ||grad||^2 <= 2 L(x) loss: ||x||^2 / ln K for the
  // logistic, 4||x||^2 for the smooth hinge, and 2||x||^2 for the hinge
  // (where the bound only holds in its self-bounding form).
  double smoothness(const Vector& x, std::size_t n_actions) const;
  double smoothness(double x_sq_norm, std::size_t n_actions) const;
};

// Scores Wx and the margin quantities derived from them.
struct Margins {
  Vector scores;
  Action y_star = 0;    // argmax score, lowest index on ties
  double m_star = 0.0;  // score[y_star] minus the best other score

  // <W^y, x> - max_{k != y} <W^k, x>
  double margin(Action y) const;
  // argmax_{k != y} score, lowest index on ties
  Action best_other(Action y) const;
};

Margins compute_margins(const Matrix& w, const Vector& x);

// The doubled smooth hinge: 1-2m for m<=0, (1-m)^2 on (0,1), 0 beyond.
double smooth_hinge_value(double m);
double smooth_hinge_derivative(double m);

double loss_value(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y);
double loss_value(const SurrogateLoss& loss, const Margins& margins, Action y);

// The round loss as a function of W when the hinge's case split is frozen at
// the learner's iterate (whose margins are `at_iterate`). This is the convex
// function the hinge is optimized as; the other losses ignore `at_iterate`.
double round_loss(const SurrogateLoss& loss, const Margins& at_iterate, const Matrix& w, const Vector& x, Action y);

// Exact gradient for logistic and smooth hinge; a subgradient for the hinge.
Matrix loss_gradient(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y);

// The gap map: the loss evaluated at the argmax label, clamped to [0, 1].
double gap_value(const SurrogateLoss& loss, const Matrix& w, const Vector& x);
double gap_value(const SurrogateLoss& loss, const Margins& margins);

// The standard multiclass hinge max{1 - m(W, y), 0}; upper-bounds the
// kappa-hinge for any W and is what the offline comparator is scored on.
double plain_hinge_value(const Margins& margins, Action y);
Matrix plain_hinge_gradient(const Margins& margins, const Vector& x, Action y);

struct RegularityReport {
  std::size_t samples = 0;
  double mixing_violation_rate = 0.0;  // wrong-plus-right condition
  double gradient_violation_rate = 0.0;  // self-bounding gradient condition
  double max_gradient_ratio = 0.0;       // max ||grad||^2 / (2 L(x) loss) over samples with loss > 0
};

inline constexpr double kRegularityTolerance = 1e-9;

// Samples W, x with standard normal entries and y != y_star uniformly. The
// gradient condition is checked at both y and y_star.
RegularityReport check_regularity(const SurrogateLoss& loss, std::size_t n_actions, std::size_t dim,
                                  std::size_t n_samples, Rng& rng);

}  // namespace graphtron
