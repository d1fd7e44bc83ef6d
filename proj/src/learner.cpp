#include "graphtron/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphtron {

Action sample_action(std::span<const double> p, Rng& rng) {
  if (p.empty()) throw std::invalid_argument("cannot sample from an empty distribution");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  Action last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the cumulative sum just under u.
  return last_positive;
}

double observation_probability(std::span<const double> p_prime, const FeedbackGraph& graph, Action y_true) {
  double p = 0.0;
  for (Action y = 0; y < graph.n_actions(); ++y)
    if (graph.observes(y, y_true)) p += p_prime[y];
  return std::min(p, 1.0);
}

bool is_valid_distribution(std::span<const double> p, double tolerance) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

}  // namespace graphtron
