#include "graphtron/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "graphtron/losses.hpp"

namespace graphtron {

namespace {

void require_full_information(const FeedbackGraph& graph, std::string_view learner) {
  if (revealing_set(graph).size() != graph.n_actions())
    throw IncompatibleGraph(std::string(learner) + " needs full-information feedback");
}

// Full-information learners recover the label from the feedback set.
Action label_from_feedback(const Feedback& feedback) {
  for (const FeedbackPair& f : feedback)
    if (!f.mistake) return f.action;
  throw std::invalid_argument("feedback does not reveal the label");
}

Matrix zero_weights(std::size_t n_actions, std::size_t dim) {
  if (n_actions < 2 || dim == 0) throw std::invalid_argument("need at least two actions and one feature");
  return Matrix::Zero(static_cast<Eigen::Index>(n_actions), static_cast<Eigen::Index>(dim));
}

std::vector<double> point_mass(std::size_t n, Action at) {
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return p;
}

}  // namespace

Perceptron::Perceptron(std::size_t n_actions, std::size_t dim) : w_(zero_weights(n_actions, dim)) {}

Perceptron::Perceptron(const FeedbackGraph& graph, std::size_t dim) : Perceptron(graph.n_actions(), dim) {
  require_full_information(graph, "perceptron");
}

Action Perceptron::step(const Vector& x, Action y_true) {
  const Action predicted = compute_margins(w_, x).y_star;
  if (predicted != y_true) {
    w_.row(static_cast<Eigen::Index>(y_true)) += x.transpose();
    w_.row(static_cast<Eigen::Index>(predicted)) -= x.transpose();
  }
  return predicted;
}

Action Perceptron::act(const Vector& x, Rng&) {
  const Action predicted = compute_margins(w_, x).y_star;
  point_ = point_mass(n_actions(), predicted);
  stats_ = RoundStats{predicted, 0.0, 0.0, false, false, 0.0};
  return predicted;
}

void Perceptron::observe(const Vector& x, Action, const Feedback& feedback) {
  step(x, label_from_feedback(feedback));
  stats_.observed = true;
  stats_.importance_weight = 1.0;
}

PassiveAggressive::PassiveAggressive(std::size_t n_actions, std::size_t dim) : w_(zero_weights(n_actions, dim)) {}

PassiveAggressive::PassiveAggressive(const FeedbackGraph& graph, std::size_t dim)
    : PassiveAggressive(graph.n_actions(), dim) {
  require_full_information(graph, "pa");
}

Action PassiveAggressive::step(const Vector& x, Action y_true) {
  const Margins margins = compute_margins(w_, x);
  const double loss = plain_hinge_value(margins, y_true);
  const double sq = x.squaredNorm();
  tau_ = 0.0;
  if (loss > 0.0 && sq > 0.0) {
    tau_ = loss / (2.0 * sq);
    const Action rival = margins.best_other(y_true);
    w_.row(static_cast<Eigen::Index>(y_true)) += tau_ * x.transpose();
    w_.row(static_cast<Eigen::Index>(rival)) -= tau_ * x.transpose();
  }
  return margins.y_star;
}

Action PassiveAggressive::act(const Vector& x, Rng&) {
  const Action predicted = compute_margins(w_, x).y_star;
  point_ = point_mass(n_actions(), predicted);
  stats_ = RoundStats{predicted, 0.0, 0.0, false, false, 0.0};
  return predicted;
}

void PassiveAggressive::observe(const Vector& x, Action, const Feedback& feedback) {
  step(x, label_from_feedback(feedback));
  stats_.observed = true;
  stats_.importance_weight = 1.0;
}

double banditron_default_explore(double x_sq_max, std::size_t rounds, bool use_max) {
  const double rate = rounds == 0 ? 1.0 : std::cbrt(x_sq_max / static_cast<double>(rounds));
  return std::clamp(use_max ? std::max(0.5, rate) : std::min(0.5, rate), 1e-12, 1.0);
}

ImportanceWeightedBanditron::ImportanceWeightedBanditron(FeedbackGraph graph, std::size_t dim, double explore)
    : graph_(std::move(graph)), w_(zero_weights(graph_.n_actions(), dim)), explore_(explore) {
  if (!(explore > 0.0 && explore <= 1.0)) throw std::invalid_argument("banditron exploration must lie in (0, 1]");
  support_ = revealing_set(graph_);
  if (support_.empty()) {
    for (Action y = 0; y < graph_.n_actions(); ++y) {
      if (!graph_.observes(y, y))
        throw IncompatibleGraph("banditron needs a bandit graph or a graph with a revealing action");
      support_.push_back(y);
    }
  }
}

std::vector<double> ImportanceWeightedBanditron::distribution(const Vector& x) const {
  std::vector<double> p(graph_.n_actions(), 0.0);
  p[compute_margins(w_, x).y_star] = 1.0 - explore_;
  for (Action s : support_) p[s] += explore_ / static_cast<double>(support_.size());
  return p;
}

Matrix ImportanceWeightedBanditron::update_direction(const Vector& x, Action y_true, std::span<const double> p) const {
  const double observe_p = observation_probability(p, graph_, y_true);
  return plain_hinge_gradient(compute_margins(w_, x), x, y_true) / observe_p;
}

Action ImportanceWeightedBanditron::act(const Vector& x, Rng& rng) {
  p_ = distribution(x);
  const Action played = sample_action(p_, rng);
  stats_ = RoundStats{compute_margins(w_, x).y_star, 0.0, explore_, false, false, 0.0};
  return played;
}

void ImportanceWeightedBanditron::observe(const Vector& x, Action played, const Feedback& feedback) {
  std::optional<Action> y_true;
  for (const FeedbackPair& f : feedback) {
    if (f.action >= graph_.n_actions() || !graph_.observes(played, f.action))
      throw std::invalid_argument("feedback outside the played action's out-neighbourhood");
    if (!f.mistake) y_true = f.action;
  }
  if (!y_true) return;
  stats_.observed = true;
  stats_.importance_weight = 1.0 / observation_probability(p_, graph_, *y_true);
  w_ -= update_direction(x, *y_true, p_);
}

}  // namespace graphtron
