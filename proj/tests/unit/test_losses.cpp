#include <cmath>

#include "doctest.h"
#include "graphtron/losses.hpp"
#include "oracles.hpp"

using namespace graphtron;

namespace {

const SurrogateLoss kLogistic{LossKind::logistic, 0.5};
const SurrogateLoss kSmooth{LossKind::smooth_hinge, 0.5};
const SurrogateLoss kHinge{LossKind::hinge, 0.5};

}  // namespace

TEST_CASE("losses at W = 0 equal one") {
  Rng rng(1);
  const Matrix w = Matrix::Zero(5, 4);
  const Vector x = oracle::gaussian_vector(4, rng);
  for (Action y = 0; y < 5; ++y) {
    CHECK(loss_value(kLogistic, w, x, y) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(loss_value(kSmooth, w, x, y) == 1.0);
    CHECK(loss_value(kHinge, w, x, y) == 1.0);
  }
  CHECK(gap_value(kLogistic, w, x) == doctest::Approx(1.0));
  CHECK(gap_value(kHinge, w, x) == 1.0);
}

TEST_CASE("labels out of range are rejected") {
  const Matrix w = Matrix::Zero(3, 2);
  const Vector x = Vector::Ones(2);
  CHECK_THROWS_AS(loss_value(kSmooth, w, x, 3), std::out_of_range);
  CHECK_THROWS_AS(loss_gradient(kHinge, w, x, 7), std::out_of_range);
  CHECK_THROWS_AS(parse_loss_kind("squared"), std::invalid_argument);
}

TEST_CASE("margins pick the lowest index on ties") {
  Matrix w(3, 1);
  w << 1.0, 2.0, 2.0;
  const Margins m = compute_margins(w, Vector::Ones(1));
  CHECK(m.y_star == 1);
  CHECK(m.m_star == 0.0);
  CHECK(m.best_other(1) == 2);
  CHECK(m.margin(0) == -1.0);
}

TEST_CASE("smooth hinge pieces") {
  CHECK(smooth_hinge_value(0.0) == 1.0);
  CHECK(smooth_hinge_value(-1.0) == 3.0);
  CHECK(smooth_hinge_value(0.5) == 0.25);
  CHECK(smooth_hinge_value(1.0) == 0.0);
  CHECK(smooth_hinge_derivative(0.0) == -2.0);
  CHECK(smooth_hinge_derivative(0.25) == -1.5);
  CHECK(smooth_hinge_derivative(2.0) == 0.0);
  // derivative^2 = 4 * value on (0, 1)
  for (double m = 0.01; m < 1.0; m += 0.01)
    CHECK(smooth_hinge_derivative(m) * smooth_hinge_derivative(m) == doctest::Approx(4.0 * smooth_hinge_value(m)));
}

TEST_CASE("logistic gradient at W = 0 is (1/K - 1[k=y]) x / ln K") {
  const Matrix w = Matrix::Zero(4, 3);
  Vector x(3);
  x << 1.0, -2.0, 0.5;
  const Matrix g = loss_gradient(kLogistic, w, x, 2);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double coef = (0.25 - (k == 2 ? 1.0 : 0.0)) / std::log(4.0);
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(g(k, j) == doctest::Approx(coef * x[j]).epsilon(1e-14));
  }
}

TEST_CASE("smooth hinge and hinge vanish once the margin is large") {
  Matrix w = Matrix::Zero(3, 2);
  w.row(1) << 2.0, 0.0;
  Vector x(2);
  x << 1.0, 1.0;
  CHECK(loss_gradient(kSmooth, w, x, 1).isZero());
  CHECK(loss_value(kSmooth, w, x, 1) == 0.0);
  CHECK(gap_value(kSmooth, w, x) == 0.0);
  // m_star = 2 >= kappa, correct argmax: zero hinge
  CHECK(loss_value(kHinge, w, x, 1) == 0.0);
  CHECK(gap_value(kHinge, w, x) == 0.0);
  // wrong label: 1 - m = 1 + 2
  CHECK(loss_value(kHinge, w, x, 0) == 3.0);
}

TEST_CASE("hinge with a small winning margin still charges the argmax") {
  Matrix w = Matrix::Zero(3, 1);
  w(0, 0) = 0.3;  // m_star = 0.3 < kappa
  const Vector x = Vector::Ones(1);
  CHECK(loss_value(kHinge, w, x, 0) == doctest::Approx(0.7));
  CHECK(gap_value(kHinge, w, x) == doctest::Approx(0.7));
  const Matrix g = loss_gradient(kHinge, w, x, 0);
  CHECK(g(0, 0) == -1.0);
  CHECK(g(1, 0) == 1.0);
  CHECK(g(2, 0) == 0.0);
  w(0, 0) = 0.6;  // above kappa
  CHECK(loss_gradient(kHinge, w, x, 0).isZero());
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(7);
  std::uniform_int_distribution<Action> label(0, 5);
  for (const SurrogateLoss& loss : {kLogistic, kSmooth}) {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Matrix w = oracle::gaussian_matrix(6, 7, rng, 0.3);
      const Vector x = oracle::gaussian_vector(7, rng);
      const Action y = label(rng);
      const Margins m = compute_margins(w, x);
      // Skip the measure-zero set where the strongest competitor is tied.
      const Action rival = m.best_other(y);
      Vector others = m.scores;
      others[static_cast<Eigen::Index>(y)] = -1e300;
      others[static_cast<Eigen::Index>(rival)] = -1e300;
      if (m.scores[static_cast<Eigen::Index>(rival)] - others.maxCoeff() < 1e-3) continue;
      const Matrix fd = oracle::finite_difference([&](const Matrix& p) { return loss_value(loss, p, x, y); }, w);
      worst = std::max(worst, oracle::relative_error(loss_gradient(loss, w, x, y), fd));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("regularity validator") {
  Rng rng(11);
  SUBCASE("smooth hinge satisfies both conditions") {
    for (std::size_t k : {2, 6, 9, 12}) {
      const RegularityReport r = check_regularity(kSmooth, k, 10, 10000, rng);
      CHECK(r.mixing_violation_rate == 0.0);
      CHECK(r.gradient_violation_rate == 0.0);
      CHECK(r.max_gradient_ratio <= 1.0 + 1e-12);
    }
  }
  SUBCASE("hinge satisfies the self-bounding condition with 4||x||^2") {
    const RegularityReport r = check_regularity(kHinge, 6, 10, 10000, rng);
    CHECK(r.gradient_violation_rate == 0.0);
  }
  SUBCASE("logistic with two classes") {
    const RegularityReport r = check_regularity(kLogistic, 2, 10, 10000, rng);
    CHECK(r.mixing_violation_rate == 0.0);
    CHECK(r.gradient_violation_rate == 0.0);
  }
  SUBCASE("logistic with more classes fails the wrong-plus-right condition at near ties") {
    // q(y) = q(y*) = 1/2: both losses equal log_3 2 < 1
    Matrix w(3, 1);
    w << 10.0, 10.0, -30.0;
    const Vector x = Vector::Ones(1);
    const double wrong = loss_value(kLogistic, w, x, 1);
    const double right = loss_value(kLogistic, w, x, 0);
    CHECK(2.0 / 3.0 * wrong + right / 3.0 < 1.0);
  }
}

TEST_CASE("property: convexity along random segments") {
  Rng rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Action> label(0, 4);
  for (const SurrogateLoss& loss : {kLogistic, kSmooth, kHinge}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const Matrix a = oracle::gaussian_matrix(5, 4, rng);
      const Matrix b = oracle::gaussian_matrix(5, 4, rng);
      const Vector x = oracle::gaussian_vector(4, rng);
      const Action y = label(rng);
      // The hinge's case split is fixed by the iterate the round was played at.
      const Margins iterate = compute_margins(trial % 2 ? a : b, x);
      auto f = [&](const Matrix& w) { return round_loss(loss, iterate, w, x, y); };
      const double lambda = unit(rng);
      CHECK(f(lambda * a + (1.0 - lambda) * b) <= lambda * f(a) + (1.0 - lambda) * f(b) + 1e-9);
    }
  }
}

TEST_CASE("property: the gap map stays in [0, 1]") {
  Rng rng(17);
  for (const SurrogateLoss& loss : {kLogistic, kSmooth, kHinge}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const double a = gap_value(loss, oracle::gaussian_matrix(6, 5, rng), oracle::gaussian_vector(5, rng));
      REQUIRE(a >= 0.0);
      REQUIRE(a <= 1.0);
    }
  }
}
