#include "graphtron/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphtron {

Vector densify(const RealizedExample& ex, std::size_t dim) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [i, v] : ex.features) x[i] = v;
  return x;
}

std::vector<std::size_t> default_checkpoints(std::size_t rounds) {
  std::vector<std::size_t> points;
  if (rounds == 0) return points;
  constexpr int kLogSpaced = 50;
  const double top = std::log(static_cast<double>(rounds));
  for (int i = 0; i < kLogSpaced; ++i) {
    const double t = std::exp(top * i / (kLogSpaced - 1));
    points.push_back(std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(t)), 1, rounds));
  }
  for (std::size_t p = 1; p <= rounds; p *= 10) points.push_back(p);
  points.push_back(rounds);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Feedback feedback_set(const FeedbackGraph& graph, Action played, Action y_true) {
  Feedback fb;
  fb.reserve(graph.out(played).size());
  for (Action y : graph.out(played)) fb.push_back({y, y != y_true});
  return fb;
}

RunResult run_protocol(SyntheticEnvironment& env, const FeedbackGraph& graph, OnlineLearner& learner, Rng& rng,
                       const RunOptions& options) {
  if (learner.n_actions() != graph.n_actions()) throw std::invalid_argument("learner and graph disagree on actions");
  if (env.n_classes() != graph.label_actions().size())
    throw std::invalid_argument("environment classes do not match the graph's label actions");

  RunResult result;
  auto next_checkpoint = options.checkpoints.begin();
  Checkpoint acc;
  for (std::size_t t = 1; t <= options.rounds; ++t) {
    const Example ex = env.next();
    const Action y_true = graph.label_actions()[ex.label];

    RoundRecord rec;
    rec.t = t;
    rec.y_true = y_true;
    rec.surrogate = loss_value(options.metric_loss, learner.weights(), ex.x, y_true);

    rec.y_prime = learner.act(ex.x, rng);
    const auto p = learner.last_distribution();
    rec.expected_mistake = 1.0 - p[y_true];
    rec.observe_probability = observation_probability(p, graph, y_true);
    rec.mistake = rec.y_prime != y_true;

    learner.observe(ex.x, rec.y_prime, feedback_set(graph, rec.y_prime, y_true));
    const RoundStats stats = learner.last_round();
    rec.y_star = stats.y_star;
    rec.gap = stats.gap;
    rec.gamma_t = stats.gamma_t;
    rec.zeta = stats.zeta;
    rec.observed = stats.observed;
    rec.importance_weight = stats.importance_weight;
    if (options.on_round) options.on_round(rec, learner, ex.x);

    acc.t = t;
    acc.cum_mistakes += rec.mistake ? 1 : 0;
    acc.cum_queries += graph.is_label(rec.y_prime) ? 0 : 1;
    acc.cum_surrogate += rec.surrogate;
    acc.cum_gamma += rec.gamma_t;

    while (next_checkpoint != options.checkpoints.end() && *next_checkpoint <= t) {
      if (*next_checkpoint == t) result.checkpoints.push_back(acc);
      ++next_checkpoint;
    }
    if (options.keep_sequence) {
      RealizedExample r;
      r.label = y_true;
      r.mistake = rec.mistake;
      for (Eigen::Index i = 0; i < ex.x.size(); ++i)
        if (ex.x[i] != 0.0) r.features.emplace_back(static_cast<std::uint32_t>(i), ex.x[i]);
      result.sequence.push_back(std::move(r));
    }
    if (options.keep_records) result.records.push_back(rec);
  }
  result.totals = acc;
  return result;
}

}  // namespace graphtron
