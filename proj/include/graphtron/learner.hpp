#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "graphtron/feedback_graph.hpp"
#include "graphtron/types.hpp"

namespace graphtron {

// One element of the feedback set: the zero-one loss of `action` this round.
struct FeedbackPair {
  Action action;
  bool mistake;
};
using Feedback = std::vector<FeedbackPair>;

// Per-round internals a learner exposes for logging. Deterministic learners
// leave the exploration fields at zero.
struct RoundStats {
  Action y_star = 0;
  double gap = 0.0;      // a_t
  double gamma_t = 0.0;  // exploration rate actually used
  bool zeta = false;     // gap branch taken
  bool observed = false;
  double importance_weight = 0.0;  // v_t
};

// The learner never sees the true label directly; it only receives the
// feedback set induced by the graph and the action it played.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t n_actions() const = 0;
  virtual const Matrix& weights() const = 0;

  virtual Action act(const Vector& x, Rng& rng) = 0;
  // The distribution the most recent act() sampled from.
  virtual std::span<const double> last_distribution() const = 0;
  virtual void observe(const Vector& x, Action played, const Feedback& feedback) = 0;
  virtual RoundStats last_round() const = 0;
};

// Inverse-CDF draw. Zero-mass actions are never returned.
Action sample_action(std::span<const double> p, Rng& rng);

// P(y_true in out(y')) for y' ~ p_prime.
double observation_probability(std::span<const double> p_prime, const FeedbackGraph& graph, Action y_true);

// Entries non-negative and summing to one within `tolerance`.
bool is_valid_distribution(std::span<const double> p, double tolerance = 1e-12);

}  // namespace graphtron
