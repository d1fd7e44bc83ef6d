#include "graphtron/gappletron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphtron {

PredictionOutcome gap_mixture(std::size_t n_actions, Action y_star, double gap, double gamma_t,
                              std::span<const Action> dominating) {
  if (y_star >= n_actions) throw std::out_of_range("y_star out of range");
  if (dominating.empty()) throw std::invalid_argument("dominating set is empty");
  PredictionOutcome out;
  out.y_star = y_star;
  out.gap = gap;
  out.gamma_t = gamma_t;
  out.zeta = gamma_t <= gap;
  out.p_prime.assign(n_actions, 0.0);

  const double on_argmax = out.zeta ? 1.0 - gap : 1.0 - gamma_t;
  if (on_argmax < 0.0) throw std::logic_error("mixture weight on the argmax is negative");
  out.p_prime[y_star] = on_argmax;
  if (out.zeta) {
    const double each = gap / static_cast<double>(n_actions);
    for (double& v : out.p_prime) v += each;
  } else {
    const double each = gamma_t / static_cast<double>(dominating.size());
    for (Action s : dominating) out.p_prime[s] += each;
  }
  return out;
}

Tuning parse_tuning(std::string_view name) {
  if (name == "unit") return Tuning::unit;
  if (name == "theory-expectation") return Tuning::theory_expectation;
  if (name == "theory-hp") return Tuning::theory_hp;
  throw std::invalid_argument("unknown tuning '" + std::string(name) + "' (valid: unit, theory-expectation, theory-hp)");
}

std::string_view to_string(Tuning tuning) {
  switch (tuning) {
    case Tuning::unit: return "unit";
    case Tuning::theory_expectation: return "theory-expectation";
    case Tuning::theory_hp: return "theory-hp";
  }
  return "?";
}

double theory_gamma(Tuning tuning, const TuningInputs& in) {
  switch (tuning) {
    case Tuning::unit: return 1.0;
    case Tuning::theory_expectation: return 0.5 * in.radius * std::sqrt(in.n_actions * in.rho * in.smoothness);
    case Tuning::theory_hp:
      return std::sqrt(in.n_actions * in.rho *
                       (in.smoothness * in.radius * in.radius + 5.0 * in.loss_max * std::log(2.0 / in.delta)));
  }
  return 1.0;
}

Gappletron::Gappletron(FeedbackGraph graph, const GappletronConfig& config, std::size_t dim)
    : graph_(std::move(graph)),
      summary_(summarize(graph_)),
      config_(config),
      oco_(graph_.n_actions(), dim, config.oco, config.radius) {
  if (graph_.n_actions() < 2) throw std::invalid_argument("gappletron needs at least two actions");
  if (!(config.gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  if (config.loss.kappa < 0.0 || config.loss.kappa > 1.0) throw std::invalid_argument("kappa must lie in [0, 1]");
}

const PredictionOutcome& Gappletron::predict_distribution(const Vector& x) {
  const Margins margins = compute_margins(oco_.weights(), x);
  double gamma_t = 0.0;
  if (!summary_.is_revealing(margins.y_star)) {
    ++explore_count_;
    gamma_t = std::min(0.5, config_.gamma / std::sqrt(static_cast<double>(explore_count_)));
  }
  pending_ = gap_mixture(graph_.n_actions(), margins.y_star, gap_value(config_.loss, margins), gamma_t,
                         summary_.dominating);
  ++t_;
  return *pending_;
}

UpdateResult Gappletron::update(const Vector& x, Action y_prime, const Feedback& feedback) {
  if (!pending_) throw std::logic_error("update() without a preceding predict_distribution()");
  if (y_prime >= graph_.n_actions()) throw std::out_of_range("played action out of range");

  std::optional<Action> y_true;
  for (const FeedbackPair& f : feedback) {
    if (f.action >= graph_.n_actions() || !graph_.observes(y_prime, f.action))
      throw std::invalid_argument("feedback for action " + std::to_string(f.action + 1) + " is outside out(" +
                                  std::to_string(y_prime + 1) + ")");
    if (!f.mistake) y_true = f.action;
  }

  UpdateResult result;
  if (y_true) {
    const double p = observation_probability(pending_->p_prime, graph_, *y_true);
    if (!(p > 0.0)) throw std::logic_error("label observed through a zero-probability event");
    result.observed = true;
    result.importance_weight = 1.0 / p;
    oco_.update(result.importance_weight * loss_gradient(config_.loss, oco_.weights(), x, *y_true));
  }

  last_ = std::move(*pending_);
  pending_.reset();
  stats_ = RoundStats{last_.y_star, last_.gap, last_.gamma_t, last_.zeta, result.observed, result.importance_weight};
  return result;
}

Action Gappletron::act(const Vector& x, Rng& rng) { return sample_action(predict_distribution(x).p_prime, rng); }

std::span<const double> Gappletron::last_distribution() const {
  return pending_ ? std::span<const double>(pending_->p_prime) : std::span<const double>(last_.p_prime);
}

void Gappletron::observe(const Vector& x, Action played, const Feedback& feedback) { update(x, played, feedback); }

}  // namespace graphtron
