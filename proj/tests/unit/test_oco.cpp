#include <cmath>

#include "doctest.h"
#include "graphtron/oco.hpp"
#include "oracles.hpp"

using namespace graphtron;

TEST_CASE("OCO starts at zero") {
  const OnlineGradientDescent a(2, 3);
  CHECK(a.weights().rows() == 2);
  CHECK(a.weights().cols() == 3);
  CHECK(a.weights().isZero());
  CHECK(a.grad_sq_sum() == 0.0);
  const OnlineGradientDescent b(6, 80, OcoMode::projected, 1.0);
  CHECK(b.weights().isZero());
  CHECK(b.grad_sq_sum() == 0.0);
  CHECK_THROWS_AS(OnlineGradientDescent(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(OnlineGradientDescent(2, 3, OcoMode::projected, 0.0), std::invalid_argument);
}

TEST_CASE("OCO update rule") {
  OnlineGradientDescent oco(2, 2);
  oco.update(Matrix::Zero(2, 2));
  CHECK(oco.weights().isZero());
  CHECK(oco.grad_sq_sum() == 0.0);

  Matrix g(2, 2);
  g << 1.0, -2.0, 0.5, 3.0;
  oco.update(g);
  const Matrix expected = -g / std::sqrt(1e-8 + g.squaredNorm());
  CHECK((oco.weights() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(oco.grad_sq_sum() == g.squaredNorm());

  Matrix bad = g;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(oco.update(bad), std::invalid_argument);
  CHECK_THROWS_AS(oco.update(Matrix::Zero(3, 2)), std::invalid_argument);
}

TEST_CASE("projected OCO stays inside the ball") {
  OnlineGradientDescent oco(3, 4, OcoMode::projected, 1.0);
  Rng rng(3);
  oco.update(1e6 * oracle::gaussian_matrix(3, 4, rng));
  CHECK(oco.weights().norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 200; ++i) {
    oco.update(oracle::gaussian_matrix(3, 4, rng, 10.0));
    CHECK(oco.weights().norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("OCO is deterministic") {
  Rng a(5), b(5);
  OnlineGradientDescent x(4, 3), y(4, 3);
  for (int i = 0; i < 500; ++i) {
    x.update(oracle::gaussian_matrix(4, 3, a));
    y.update(oracle::gaussian_matrix(4, 3, b));
  }
  CHECK(x.weights() == y.weights());
  CHECK(x.grad_sq_sum() == y.grad_sq_sum());
}

TEST_CASE("property: regret per round shrinks on noisy quadratic losses") {
  // f_t(W) = 1/2 ||W - C_t||^2 with C_t scattered around a fixed centre.
  constexpr int T = 10000;
  Rng rng(19);
  const Matrix centre = oracle::gaussian_matrix(3, 4, rng);
  std::vector<Matrix> targets;
  for (int t = 0; t < T; ++t) targets.push_back(centre + oracle::gaussian_matrix(3, 4, rng, 0.5));
  Matrix best = Matrix::Zero(3, 4);
  for (const Matrix& c : targets) best += c / T;

  OnlineGradientDescent oco(3, 4);
  double first = 0.0, second = 0.0;
  for (int t = 0; t < T; ++t) {
    const Matrix& c = targets[static_cast<std::size_t>(t)];
    const double regret = 0.5 * (oco.weights() - c).squaredNorm() - 0.5 * (best - c).squaredNorm();
    (t < T / 2 ? first : second) += regret;
    oco.update(oco.weights() - c);
  }
  CHECK(second / (T / 2) < first / (T / 2));
}
