#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "graphtron/feedback_graph.hpp"
#include "graphtron/learner.hpp"
#include "graphtron/losses.hpp"
#include "graphtron/synthetic.hpp"

namespace graphtron {

struct RoundRecord {
  std::size_t t = 0;  // 1-based
  Action y_true = 0;
  Action y_star = 0;
  double gap = 0.0;
  double gamma_t = 0.0;
  bool zeta = false;
  Action y_prime = 0;
  bool mistake = false;
  bool observed = false;
  double importance_weight = 0.0;
  double surrogate = 0.0;         // loss of the pre-update weights on (x_t, y_t)
  double expected_mistake = 0.0;  // sum_y p'(y) 1[y != y_t]
  double observe_probability = 0.0;
};

struct Checkpoint {
  std::size_t t = 0;
  std::size_t cum_mistakes = 0;
  std::size_t cum_queries = 0;
  double cum_surrogate = 0.0;
  double cum_gamma = 0.0;
  double error_rate() const { return t == 0 ? 0.0 : static_cast<double>(cum_mistakes) / static_cast<double>(t); }
};

// Features stored as (index, value) pairs; exact for the synthetic 0/1 data.
struct RealizedExample {
  std::vector<std::pair<std::uint32_t, double>> features;
  Action label = 0;
  bool mistake = false;
};

Vector densify(const RealizedExample& ex, std::size_t dim);

struct RunOptions {
  std::size_t rounds = 0;
  std::vector<std::size_t> checkpoints;  // rounds at which aggregates are logged
  SurrogateLoss metric_loss;             // loss used for the surrogate column
  bool keep_records = false;
  bool keep_sequence = false;
  // Called once per round after the learner updated; last_distribution()
  // still holds the distribution the round was played from.
  std::function<void(const RoundRecord&, const OnlineLearner&, const Vector& x)> on_round;
};

struct RunResult {
  std::vector<Checkpoint> checkpoints;
  std::vector<RoundRecord> records;
  std::vector<RealizedExample> sequence;
  Checkpoint totals;
};

// 50 log-spaced rounds in [1, T], every power of ten up to T, and T itself.
std::vector<std::size_t> default_checkpoints(std::size_t rounds);

// The feedback set {(y, 1[y != y_true]) : y in out(played)}.
Feedback feedback_set(const FeedbackGraph& graph, Action played, Action y_true);

// Runs the interaction loop. Class c of the environment is the c-th label
// action of the graph; plays outside the label actions count as queries.
RunResult run_protocol(SyntheticEnvironment& env, const FeedbackGraph& graph, OnlineLearner& learner, Rng& rng,
                       const RunOptions& options);

}  // namespace graphtron
