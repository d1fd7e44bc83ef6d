#pragma once

#include <stdexcept>
#include <vector>

#include "graphtron/feedback_graph.hpp"
#include "graphtron/learner.hpp"

namespace graphtron {

class IncompatibleGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Multiclass Perceptron: predict the argmax; on a mistake add x to the true
// row and subtract it from the predicted row. Full information only.
class Perceptron final : public OnlineLearner {
 public:
  Perceptron(std::size_t n_actions, std::size_t dim);
  Perceptron(const FeedbackGraph& graph, std::size_t dim);

  // Returns the prediction made before the update.
  Action step(const Vector& x, Action y_true);

  std::string_view name() const override { return "perceptron"; }
  std::size_t n_actions() const override { return static_cast<std::size_t>(w_.rows()); }
  const Matrix& weights() const override { return w_; }
  Action act(const Vector& x, Rng& rng) override;
  std::span<const double> last_distribution() const override { return point_; }
  void observe(const Vector& x, Action played, const Feedback& feedback) override;
  RoundStats last_round() const override { return stats_; }

 private:
  Matrix w_;
  std::vector<double> point_;
  RoundStats stats_;
};

// Max-violation passive-aggressive update on the multiclass hinge
// max{1 - m(W, y), 0}: step tau = loss / (2 ||x||^2) moving the true row up
// and the strongest competitor down. Full information only.
class PassiveAggressive final : public OnlineLearner {
 public:
  PassiveAggressive(std::size_t n_actions, std::size_t dim);
  PassiveAggressive(const FeedbackGraph& graph, std::size_t dim);

  Action step(const Vector& x, Action y_true);
  double last_tau() const { return tau_; }

  std::string_view name() const override { return "pa"; }
  std::size_t n_actions() const override { return static_cast<std::size_t>(w_.rows()); }
  const Matrix& weights() const override { return w_; }
  Action act(const Vector& x, Rng& rng) override;
  std::span<const double> last_distribution() const override { return point_; }
  void observe(const Vector& x, Action played, const Feedback& feedback) override;
  RoundStats last_round() const override { return stats_; }

 private:
  Matrix w_;
  std::vector<double> point_;
  double tau_ = 0.0;
  RoundStats stats_;
};

// min{1/2, (X^2/T)^{1/3}}, or the max variant when `use_max` is set.
double banditron_default_explore(double x_sq_max, std::size_t rounds, bool use_max = false);

// Banditron whose update direction is the importance-weighted hinge
// subgradient, with unit step. Explores uniformly over the revealing actions
// when the graph has any, and over all actions on the bandit graph.
class ImportanceWeightedBanditron final : public OnlineLearner {
 public:
  ImportanceWeightedBanditron(FeedbackGraph graph, std::size_t dim, double explore);

  std::string_view name() const override { return "banditron"; }
  std::size_t n_actions() const override { return graph_.n_actions(); }
  const Matrix& weights() const override { return w_; }
  double explore() const { return explore_; }
  const std::vector<Action>& exploration_support() const { return support_; }

  // The sampling distribution for x under the current weights.
  std::vector<double> distribution(const Vector& x) const;
  // The update applied when y_true is observed from the current distribution p.
  Matrix update_direction(const Vector& x, Action y_true, std::span<const double> p) const;

  Action act(const Vector& x, Rng& rng) override;
  std::span<const double> last_distribution() const override { return p_; }
  void observe(const Vector& x, Action played, const Feedback& feedback) override;
  RoundStats last_round() const override { return stats_; }

 private:
  FeedbackGraph graph_;
  Matrix w_;
  double explore_;
  std::vector<Action> support_;
  std::vector<double> p_;
  RoundStats stats_;
};

}  // namespace graphtron
