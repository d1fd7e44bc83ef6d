#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "graphtron/feedback_graph.hpp"
#include "graphtron/learner.hpp"
#include "graphtron/losses.hpp"
#include "graphtron/oco.hpp"

namespace graphtron {

struct PredictionOutcome {
  std::vector<double> p_prime;
  Action y_star = 0;
  double gap = 0.0;      // a_t
  double gamma_t = 0.0;  // in [0, 1/2]
  bool zeta = false;     // 1[gamma_t <= a_t]
};

// The gap-mixed distribution: with zeta = 1[gamma_t <= gap] it puts
// 1 - zeta*gap - (1-zeta)*gamma_t on y_star, zeta*gap spread uniformly over
// all actions, and (1-zeta)*gamma_t spread uniformly over the dominating set.
PredictionOutcome gap_mixture(std::size_t n_actions, Action y_star, double gap, double gamma_t,
                              std::span<const Action> dominating);

enum class Tuning { unit, theory_expectation, theory_hp };

Tuning parse_tuning(std::string_view name);
std::string_view to_string(Tuning tuning);

struct TuningInputs {
  double radius = 1.0;      // B, stands in for the comparator norm bound h(U)
  double smoothness = 1.0;  // L, a bound on L(x) over the stream
  double rho = 1.0;         // dominating set size
  double n_actions = 2.0;   // K
  double delta = 0.05;      // failure probability for the high-probability preset
  double loss_max = 1.0;    // bound on the surrogate loss over the domain
};

// unit: 1. theory_expectation: B/2 sqrt(K rho L).
// theory_hp: sqrt(K rho (L B^2 + 5 loss_max ln(2/delta))).
double theory_gamma(Tuning tuning, const TuningInputs& in);

struct GappletronConfig {
  SurrogateLoss loss;
  double gamma = 1.0;
  OcoMode oco = OcoMode::adaptive_unprojected;
  double radius = 1.0;
};

struct UpdateResult {
  bool observed = false;
  double importance_weight = 0.0;
};

class Gappletron final : public OnlineLearner {
 public:
  Gappletron(FeedbackGraph graph, const GappletronConfig& config, std::size_t dim);

  std::string_view name() const override { return "gappletron"; }
  std::size_t n_actions() const override { return graph_.n_actions(); }
  const Matrix& weights() const override { return oco_.weights(); }

  // Advances the exploration counter when the argmax is not revealing.
  const PredictionOutcome& predict_distribution(const Vector& x);

  // Requires a preceding predict_distribution() on the same x. Throws
  // std::invalid_argument when the feedback names actions outside out(y').
  UpdateResult update(const Vector& x, Action y_prime, const Feedback& feedback);

  Action act(const Vector& x, Rng& rng) override;
  std::span<const double> last_distribution() const override;
  void observe(const Vector& x, Action played, const Feedback& feedback) override;
  RoundStats last_round() const override { return stats_; }

  const FeedbackGraph& graph() const { return graph_; }
  const GraphSummary& summary() const { return summary_; }
  const GappletronConfig& config() const { return config_; }
  std::size_t explore_count() const { return explore_count_; }
  std::size_t rounds() const { return t_; }
  const OnlineGradientDescent& oco() const { return oco_; }

 private:
  FeedbackGraph graph_;
  GraphSummary summary_;
  GappletronConfig config_;
  OnlineGradientDescent oco_;
  std::size_t explore_count_ = 0;
  std::size_t t_ = 0;
  std::optional<PredictionOutcome> pending_;
  PredictionOutcome last_;
  RoundStats stats_;
};

}  // namespace graphtron
