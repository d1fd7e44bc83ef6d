#include <cmath>

#include "doctest.h"
#include "graphtron/gappletron.hpp"
#include "graphtron/protocol.hpp"
#include "oracles.hpp"

using namespace graphtron;

namespace {

GappletronConfig config(LossKind kind, double gamma = 1.0) {
  GappletronConfig c;
  c.loss = SurrogateLoss{kind, 0.5};
  c.gamma = gamma;
  return c;
}

}  // namespace

TEST_CASE("full information at W = 0 with the logistic gap predicts uniformly") {
  Gappletron learner(make_standard(GraphKind::full_information, 4), config(LossKind::logistic), 3);
  const PredictionOutcome& p = learner.predict_distribution(Vector::Ones(3));
  CHECK(p.gap == doctest::Approx(1.0));
  CHECK(p.gamma_t == 0.0);
  CHECK(p.zeta);
  for (double v : p.p_prime) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(learner.explore_count() == 0);
}

TEST_CASE("gap mixture, exploration branch over two dominating nodes") {
  const std::vector<Action> s{0, 1};
  const PredictionOutcome p = gap_mixture(2, 0, 0.0, 0.5, s);
  CHECK_FALSE(p.zeta);
  CHECK(p.p_prime[0] == 0.75);
  CHECK(p.p_prime[1] == 0.25);
}

TEST_CASE("gap mixture on apple tasting with a blind argmax") {
  const FeedbackGraph apple = make_standard(GraphKind::apple_tasting, 2);
  const PredictionOutcome p = gap_mixture(2, 1, 0.0, 0.5, summarize(apple).dominating);
  CHECK(p.p_prime[0] == 0.5);
  CHECK(p.p_prime[1] == 0.5);
  CHECK(observation_probability(p.p_prime, apple, 1) == 0.5);
  CHECK(observation_probability(p.p_prime, apple, 0) == 0.5);
}

TEST_CASE("gap mixture, gap branch") {
  const std::vector<Action> s{2};
  const PredictionOutcome p = gap_mixture(4, 1, 0.4, 0.3, s);
  CHECK(p.zeta);
  CHECK(p.p_prime[1] == doctest::Approx(0.6 + 0.1));
  CHECK(p.p_prime[0] == doctest::Approx(0.1));
  CHECK(p.p_prime[2] == doctest::Approx(0.1));
  CHECK(is_valid_distribution(p.p_prime));
}

TEST_CASE("a mixture without the argmax normalization is rejected") {
  // Putting full mass on y_star and still adding the uniform part.
  std::vector<double> p(4, 0.4 / 4.0);
  p[1] += 1.0;
  CHECK_FALSE(is_valid_distribution(p));
  CHECK_FALSE(is_valid_distribution(std::vector<double>{1.2, -0.2}));
  CHECK(is_valid_distribution(std::vector<double>{0.5, 0.5}));
}

TEST_CASE("exploration counter increments before the rate is computed") {
  Gappletron learner(make_standard(GraphKind::bandit, 3), config(LossKind::smooth_hinge, 0.3), 2);
  const Vector x = Vector::Ones(2);
  CHECK(learner.predict_distribution(x).gamma_t == doctest::Approx(0.3));
  learner.update(x, 0, {{0, true}});
  CHECK(learner.predict_distribution(x).gamma_t == doctest::Approx(0.3 / std::sqrt(2.0)));
  CHECK(learner.explore_count() == 2);

  Gappletron wide(make_standard(GraphKind::bandit, 3), config(LossKind::smooth_hinge, 5.0), 2);
  CHECK(wide.predict_distribution(x).gamma_t == 0.5);
}

TEST_CASE("sampling") {
  Rng rng(23);
  const std::vector<double> point{0.0, 0.0, 1.0, 0.0};
  for (int i = 0; i < 1000; ++i) CHECK(sample_action(point, rng) == 2);

  const std::vector<double> uniform(4, 0.25);
  constexpr std::size_t n = 1000000;
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[sample_action(uniform, rng)];
  for (std::size_t c : counts)
    CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= oracle::three_sigma(0.25, n));

  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(sample_action(uniform, a) == sample_action(uniform, b));
}

TEST_CASE("observation probability") {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  CHECK(observation_probability(p, make_standard(GraphKind::full_information, 4), 2) == doctest::Approx(1.0));
  CHECK(observation_probability(p, make_standard(GraphKind::bandit, 4), 2) == 0.3);
  CHECK(observation_probability(p, make_standard(GraphKind::spam_filter_multiclass, 4), 2) == 0.1);
}

TEST_CASE("update in full information feeds the plain gradient to the OCO") {
  const FeedbackGraph full = make_standard(GraphKind::full_information, 3);
  Gappletron learner(full, config(LossKind::smooth_hinge), 2);
  OnlineGradientDescent reference(3, 2);
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::gaussian_vector(2, rng);
    const Action y = static_cast<Action>(t % 3);
    const Matrix grad = loss_gradient(SurrogateLoss{LossKind::smooth_hinge, 0.5}, learner.weights(), x, y);
    learner.predict_distribution(x);
    const UpdateResult r = learner.update(x, 1, feedback_set(full, 1, y));
    CHECK(r.observed);
    CHECK(r.importance_weight == doctest::Approx(1.0).epsilon(1e-12));
    reference.update(r.importance_weight * grad);
    CHECK(learner.weights() == reference.weights());
  }
}

TEST_CASE("bandit updates") {
  const FeedbackGraph bandit = make_standard(GraphKind::bandit, 4);
  Gappletron learner(bandit, config(LossKind::smooth_hinge), 2);
  const Vector x = Vector::Ones(2);

  learner.predict_distribution(x);
  const UpdateResult miss = learner.update(x, 1, feedback_set(bandit, 1, 2));
  CHECK_FALSE(miss.observed);
  CHECK(miss.importance_weight == 0.0);
  CHECK(learner.weights().isZero());

  // W = 0: the gap is 1, so p' is uniform and P(observe y) = 1/4.
  const PredictionOutcome& p = learner.predict_distribution(x);
  CHECK(p.p_prime[2] == 0.25);
  const UpdateResult hit = learner.update(x, 2, feedback_set(bandit, 2, 2));
  CHECK(hit.observed);
  CHECK(hit.importance_weight == 4.0);
  CHECK_FALSE(learner.weights().isZero());
}

TEST_CASE("update rejects foreign feedback and missing predictions") {
  const FeedbackGraph bandit = make_standard(GraphKind::bandit, 3);
  Gappletron learner(bandit, config(LossKind::hinge), 2);
  const Vector x = Vector::Ones(2);
  CHECK_THROWS_AS(learner.update(x, 0, {{0, true}}), std::logic_error);
  learner.predict_distribution(x);
  CHECK_THROWS_AS(learner.update(x, 0, {{1, false}}), std::invalid_argument);
}

TEST_CASE("label-efficient queries reveal the label") {
  const FeedbackGraph le = make_standard(GraphKind::label_efficient, 3);
  Gappletron learner(le, config(LossKind::smooth_hinge), 2);
  const Vector x = Vector::Ones(2);
  const PredictionOutcome p = learner.predict_distribution(x);
  const UpdateResult r = learner.update(x, 3, feedback_set(le, 3, 1));
  CHECK(r.observed);
  CHECK(r.importance_weight == doctest::Approx(1.0 / p.p_prime[3]));
}

TEST_CASE("theory presets") {
  TuningInputs in;
  in.radius = 1.0;
  in.smoothness = 4.0;
  in.rho = 2.0;
  in.n_actions = 2.0;
  CHECK(theory_gamma(Tuning::theory_expectation, in) == doctest::Approx(2.0));
  CHECK(theory_gamma(Tuning::unit, in) == 1.0);
  TuningInputs hp;
  hp.radius = 1.0;
  hp.smoothness = 1.0;
  hp.rho = 1.0;
  hp.n_actions = 1.0;
  hp.loss_max = 0.0;
  CHECK(theory_gamma(Tuning::theory_hp, hp) == doctest::Approx(1.0));
  hp.loss_max = 1.0;
  hp.delta = 0.1;
  CHECK(theory_gamma(Tuning::theory_hp, hp) == doctest::Approx(std::sqrt(1.0 + 5.0 * std::log(20.0))));
  CHECK_THROWS_AS(parse_tuning("tuned"), std::invalid_argument);
}

TEST_CASE("property: per-round invariants over random streams") {
  Rng rng(31);
  std::uniform_int_distribution<Action> label(0, 5);
  for (GraphKind kind : {GraphKind::bandit, GraphKind::spam_filter_multiclass, GraphKind::full_information}) {
    for (LossKind loss : {LossKind::smooth_hinge, LossKind::hinge}) {
      const FeedbackGraph graph = make_standard(kind, 6);
      Gappletron learner(graph, config(loss), 5);
      const double k = 6.0;
      const double factor = loss == LossKind::hinge ? std::max(2.0 / 3.0, (k - 1) / k) : (k - 1) / k;
      double gamma_sum = 0.0;
      for (int t = 0; t < 2000; ++t) {
        const Vector x = oracle::gaussian_vector(5, rng);
        const Action y = label(rng);
        const double surrogate = loss_value(learner.config().loss, learner.weights(), x, y);
        const PredictionOutcome p = learner.predict_distribution(x);
        REQUIRE(is_valid_distribution(p.p_prime));
        CHECK(p.gamma_t <= 0.5);
        CHECK(1.0 - p.p_prime[y] <= factor * surrogate + p.gamma_t + 1e-9);
        gamma_sum += p.gamma_t;
        CHECK(gamma_sum <= 2.0 * learner.config().gamma * std::sqrt(static_cast<double>(learner.explore_count())) + 1e-9);
        // Expected importance weight on observing rounds is exactly one.
        const double obs = observation_probability(p.p_prime, graph, y);
        double expectation = 0.0;
        for (Action a = 0; a < 6; ++a)
          if (graph.observes(a, y)) expectation += p.p_prime[a] / obs;
        CHECK(std::abs(expectation - 1.0) <= 1e-12);
        const Action played = sample_action(p.p_prime, rng);
        learner.update(x, played, feedback_set(graph, played, y));
      }
    }
  }
}
