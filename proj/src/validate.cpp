#include "graphtron/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "graphtron/experiment.hpp"
#include "graphtron/feedback_graph.hpp"
#include "graphtron/gappletron.hpp"
#include "graphtron/losses.hpp"
#include "graphtron/protocol.hpp"

namespace graphtron {

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

constexpr GraphKind kAllGraphs[] = {GraphKind::full_information, GraphKind::bandit, GraphKind::apple_tasting,
                                    GraphKind::label_efficient, GraphKind::spam_filter_multiclass};

std::size_t classes_for(GraphKind kind) { return kind == GraphKind::apple_tasting ? 2 : 6; }

double mistake_factor(LossKind kind, std::size_t n_actions) {
  const double k = static_cast<double>(n_actions);
  const double base = (k - 1.0) / k;
  return kind == LossKind::hinge ? std::max(2.0 / 3.0, base) : base;
}

void regularity(const ValidationOptions& opt, std::vector<PropertyResult>& out) {
  for (LossKind kind : {LossKind::smooth_hinge, LossKind::hinge, LossKind::logistic}) {
    for (std::size_t k : {2, 6, 9, 12}) {
      Rng rng(mix_seed(opt.seed, 100 + k));
      const RegularityReport r = check_regularity(SurrogateLoss{kind, 0.5}, k, 10, opt.regularity_samples, rng);
      const std::string tag = std::string(to_string(kind)) + " K=" + std::to_string(k);
      const bool mixing_asserted = kind == LossKind::smooth_hinge || (kind == LossKind::logistic && k == 2);
      out.push_back({"wrong-plus-right condition, " + tag, r.mixing_violation_rate == 0.0, !mixing_asserted,
                     fmt("violation rate %.4g", r.mixing_violation_rate)});
      out.push_back({"self-bounding gradient, " + tag, r.gradient_violation_rate == 0.0, false,
                     fmt("violation rate %.4g, max ratio %.4g", r.gradient_violation_rate, r.max_gradient_ratio)});
    }
  }
}

void per_round(const ValidationOptions& opt, std::vector<PropertyResult>& out) {
  for (GraphKind g : kAllGraphs) {
    for (LossKind kind : {LossKind::smooth_hinge, LossKind::hinge, LossKind::logistic}) {
      const FeedbackGraph graph = make_standard(g, classes_for(g));
      const std::size_t n = graph.n_actions();
      GappletronConfig cfg;
      cfg.loss = SurrogateLoss{kind, 0.5};
      cfg.gamma = 1.0;
      Gappletron learner(graph, cfg, SynthConfig{classes_for(g), 2, 0.1}.dim());
      SyntheticEnvironment env(SynthConfig{classes_for(g), 2, 0.1}, mix_seed(opt.seed, 7));
      Rng rng(mix_seed(opt.seed, 8));

      const double factor = mistake_factor(kind, n);
      const bool full_info = revealing_set(graph).size() == n;
      std::size_t bound_bad = 0, invalid = 0, unbiased_bad = 0, budget_bad = 0, full_bad = 0;
      double worst_excess = -1e300, gamma_sum = 0.0;
      RunOptions ro;
      ro.rounds = opt.rounds;
      ro.metric_loss = cfg.loss;
      ro.on_round = [&](const RoundRecord& rec, const OnlineLearner& l, const Vector&) {
        const auto p = l.last_distribution();
        const double excess = rec.expected_mistake - factor * rec.surrogate - rec.gamma_t;
        worst_excess = std::max(worst_excess, excess);
        if (excess > 1e-9) ++bound_bad;
        if (!is_valid_distribution(p)) ++invalid;
        double expectation = 0.0;
        if (rec.observe_probability > 0.0) {
          for (Action y = 0; y < n; ++y)
            if (graph.observes(y, rec.y_true)) expectation += p[y] / rec.observe_probability;
          if (std::abs(expectation - 1.0) > 1e-12) ++unbiased_bad;
        }
        gamma_sum += rec.gamma_t;
        const auto& gl = static_cast<const Gappletron&>(l);
        if (gamma_sum > 2.0 * cfg.gamma * std::sqrt(static_cast<double>(gl.explore_count())) + 1e-9) ++budget_bad;
        if (full_info && (rec.gamma_t != 0.0 || !rec.zeta || std::abs(rec.importance_weight - 1.0) > 1e-12)) ++full_bad;
      };
      run_protocol(env, graph, learner, rng, ro);

      const std::string tag = std::string(to_string(g)) + " / " + std::string(to_string(kind));
      const bool bound_informational = kind == LossKind::logistic && n >= 3;
      out.push_back({"per-round mistake bound, " + tag, bound_bad == 0, bound_informational,
                     fmt("%zu violations in %zu rounds, worst excess %.3g", bound_bad, opt.rounds, worst_excess)});
      out.push_back({"distribution validity, " + tag, invalid == 0, false, fmt("%zu invalid rounds", invalid)});
      out.push_back({"importance weights unbiased, " + tag, unbiased_bad == 0, false,
                     fmt("%zu rounds off by more than 1e-12", unbiased_bad)});
      out.push_back({"exploration budget, " + tag, budget_bad == 0, false, fmt("%zu rounds over budget", budget_bad)});
      if (full_info)
        out.push_back({"full-information specialization, " + tag, full_bad == 0, false, fmt("%zu rounds", full_bad)});
    }
  }
}

void monte_carlo(const ValidationOptions& opt, std::vector<PropertyResult>& out) {
  for (GraphKind g : {GraphKind::bandit, GraphKind::apple_tasting}) {
    const FeedbackGraph graph = make_standard(g, classes_for(g));
    const GraphSummary summary = summarize(graph);
    // A blind argmax with a small gap forces the dominating-set branch.
    const Action y_star = graph.n_actions() - 1;
    const PredictionOutcome pred = gap_mixture(graph.n_actions(), y_star, 0.1, 0.5, summary.dominating);
    const Action y_true = 0;
    const double p_obs = observation_probability(pred.p_prime, graph, y_true);
    Rng rng(mix_seed(opt.seed, 31));
    double sum = 0.0;
    for (std::size_t i = 0; i < opt.monte_carlo_samples; ++i) {
      const Action played = sample_action(pred.p_prime, rng);
      if (graph.observes(played, y_true)) sum += 1.0 / p_obs;
    }
    const double mean = sum / static_cast<double>(opt.monte_carlo_samples);
    const double sigma = std::sqrt((1.0 / p_obs - 1.0) / static_cast<double>(opt.monte_carlo_samples));
    out.push_back({"importance weight Monte Carlo, " + std::string(to_string(g)), std::abs(mean - 1.0) <= 3.0 * sigma,
                   false, fmt("mean %.6f, 3 sigma %.2g", mean, 3.0 * sigma)});
  }
}

void dominating_sets(const ValidationOptions& opt, std::vector<PropertyResult>& out) {
  Rng rng(mix_seed(opt.seed, 41));
  std::size_t not_dominating = 0, below_exact = 0;
  for (std::size_t i = 0; i < opt.random_graphs; ++i) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RawGraph raw;
    raw.n_actions = size(rng);
    const double density = 0.05 + 0.4 * unit(rng);
    raw.out.assign(raw.n_actions, {});
    std::vector<char> has_in(raw.n_actions, 0);
    for (Action y = 0; y < raw.n_actions; ++y)
      for (Action z = 0; z < raw.n_actions; ++z)
        if (unit(rng) < density) raw.out[y].push_back(z), has_in[z] = 1;
    std::uniform_int_distribution<Action> any(0, raw.n_actions - 1);
    for (Action z = 0; z < raw.n_actions; ++z)
      if (!has_in[z]) raw.out[any(rng)].push_back(z);
    const FeedbackGraph graph = validate(raw);
    const auto s = greedy_dominating_set(graph);
    for (Action z = 0; z < graph.n_actions(); ++z) {
      const bool covered = std::any_of(s.begin(), s.end(), [&](Action y) { return graph.observes(y, z); });
      if (!covered) {
        ++not_dominating;
        break;
      }
    }
    if (s.size() < exact_domination_number(graph)) ++below_exact;
  }
  out.push_back({"greedy dominating set dominates random graphs", not_dominating == 0, false,
                 fmt("%zu of %zu graphs not dominated", not_dominating, opt.random_graphs)});
  out.push_back({"greedy size at least the domination number", below_exact == 0, false,
                 fmt("%zu graphs below the exact number", below_exact)});

  std::size_t mismatched = 0;
  for (GraphKind g : kAllGraphs) {
    const FeedbackGraph graph = make_standard(g, classes_for(g));
    if (greedy_dominating_set(graph).size() != exact_domination_number(graph)) ++mismatched;
  }
  out.push_back({"greedy is optimal on the standard graphs", mismatched == 0, false, fmt("%zu mismatches", mismatched)});
}

// Central differences, step 1e-6, per weight entry.
double fd_relative_error(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y) {
  const Matrix analytic = loss_gradient(loss, w, x, y);
  Matrix numeric(w.rows(), w.cols());
  constexpr double h = 1e-6;
  Matrix probe = w;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double saved = probe.data()[i];
    probe.data()[i] = saved + h;
    const double up = loss_value(loss, probe, x, y);
    probe.data()[i] = saved - h;
    const double down = loss_value(loss, probe, x, y);
    probe.data()[i] = saved;
    numeric.data()[i] = (up - down) / (2.0 * h);
  }
  const double scale = std::max({analytic.norm(), numeric.norm(), 1e-3});
  return (analytic - numeric).norm() / scale;
}

bool away_from_kinks(const SurrogateLoss& loss, const Matrix& w, const Vector& x, Action y) {
  const Margins m = compute_margins(w, x);
  std::vector<double> s(m.scores.data(), m.scores.data() + m.scores.size());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] - s[i - 1] < 1e-3) return false;
  const double my = m.margin(y);
  if (loss.kind == LossKind::hinge)
    return std::abs(my - 1.0) > 1e-3 && std::abs(my) > 1e-3 && std::abs(m.m_star - loss.kappa) > 1e-3;
  return std::abs(my - 1.0) > 1e-3 && std::abs(my) > 1e-3;
}

void gradients(const ValidationOptions& opt, std::vector<PropertyResult>& out) {
  for (LossKind kind : {LossKind::logistic, LossKind::smooth_hinge, LossKind::hinge}) {
    const SurrogateLoss loss{kind, 0.5};
    Rng rng(mix_seed(opt.seed, 51 + static_cast<int>(kind)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<Action> label(0, 5);
    double worst = 0.0;
    std::size_t checked = 0;
    while (checked < opt.gradient_points) {
      Matrix w(6, 8);
      Vector x(8);
      for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = 0.3 * normal(rng);
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
      const Action y = label(rng);
      if (!away_from_kinks(loss, w, x, y)) continue;
      worst = std::max(worst, fd_relative_error(loss, w, x, y));
      ++checked;
    }
    out.push_back({"finite-difference gradient, " + std::string(to_string(kind)), worst <= 1e-5, false,
                   fmt("worst relative error %.3g over %zu points", worst, checked)});
  }
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const ValidationOptions& options) {
  std::vector<PropertyResult> results;
  regularity(options, results);
  gradients(options, results);
  per_round(options, results);
  monte_carlo(options, results);
  dominating_sets(options, results);
  return results;
}

int print_property_report(std::ostream& out, const std::vector<PropertyResult>& results) {
  int failures = 0;
  for (const PropertyResult& r : results) {
    const char* status = r.passed ? "PASS" : (r.informational ? "INFO" : "FAIL");
    if (!r.passed && !r.informational) ++failures;
    out << '[' << status << "] " << r.name << ": " << r.detail << '\n';
  }
  out << (failures == 0 ? "all asserted properties hold" : std::to_string(failures) + " asserted properties failed")
      << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace graphtron
