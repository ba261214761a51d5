#include <cmath>
#include <random>

#include "doctest.h"
#include "sobtrace/errors.hpp"
#include "sobtrace/pwpoly.hpp"
#include "support.hpp"

using namespace sobtrace;

TEST_CASE("identity piece") {
  const PiecewisePolynomial s({0, 1}, {Coefficients{0, 1, 0, 0}});
  CHECK(s.evaluate(0.5) == 0.5);
  CHECK(s.evaluate(0.5, 1) == 1);
  CHECK(s.evaluate(0.5, 2) == 0);
  CHECK(s.evaluate(1.0) == 1);
}

TEST_CASE("right piece governs interior breakpoints") {
  const PiecewisePolynomial s({0, 1, 2}, {Coefficients{0, 0, 0, 0}, Coefficients{5, 1, 0, 0}});
  CHECK(s.locate(0.0) == 0);
  CHECK(s.locate(1.0) == 1);
  CHECK(s.locate(2.0) == 1);
  CHECK(s(1.0) == 5);
  CHECK(s(2.0) == 6);
  CHECK_THROWS_AS(s(-1e-12), ValidationError);
  CHECK_THROWS_AS(s(2.5), ValidationError);
  CHECK_THROWS_AS(s(std::nan("")), ValidationError);
}

TEST_CASE("smoothness defect") {
  // 0 glued to t at b = 0
  const PiecewisePolynomial kink({-1, 0, 1}, {Coefficients{0, 0, 0, 0}, Coefficients{0, 1, 0, 0}});
  CHECK(smoothness_defect(kink, 0) == 0.0);
  CHECK(smoothness_defect(kink, 1) == 1.0);
  CHECK(smoothness_defect(kink, 2) == 0.0);
  CHECK(smoothness_defect(PiecewisePolynomial({0, 3}, {Coefficients{1, 2, 3, 4}}), 1) == 0.0);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(PiecewisePolynomial({0}, {}), ValidationError);
  CHECK_THROWS_AS(PiecewisePolynomial({0, 1}, {}), ValidationError);
  CHECK_THROWS_AS(PiecewisePolynomial({1, 0}, {Coefficients{}}), ValidationError);
  CHECK_THROWS_AS(PiecewisePolynomial({0, 1}, {Coefficients{std::nan(""), 0, 0, 0}}), ValidationError);
}

TEST_CASE("cubic evaluated exactly") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 3);
  const PiecewisePolynomial s({0, 3}, {Coefficients{0, 0, 0, 1}});
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng);
    CHECK(testing::rel_close(s(x), x * x * x, 1e-12));
    CHECK(testing::rel_close(s.evaluate(x, 1), 3 * x * x, 1e-12));
    CHECK(testing::rel_close(s.evaluate(x, 2), 6 * x, 1e-12));
    CHECK(s.evaluate(x, 3) == 6);
  }
  // stored about b = -2 the local coefficients cancel near 0, so compare on the scale of the piece
  const PiecewisePolynomial shifted({-2, 3}, {poly::shifted(Coefficients{0, 0, 0, 1}, -2)});
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng) * 5.0 / 3.0 - 2.0;
    CHECK(testing::rel_close(shifted(x), x * x * x, 1e-12, 27.0));
    CHECK(testing::rel_close(shifted.evaluate(x, 1), 3 * x * x, 1e-12, 27.0));
  }
}

TEST_CASE("derivatives match central differences") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::random_nodes(rng, 6, 0.3, 1.5, -1.0);
    const auto s = testing::random_hermite(rng, x);
    std::uniform_real_distribution<double> u(x.front() + 1e-3, x.back() - 1e-3);
    for (int k = 0; k < 20; ++k) {
      const double t = u(rng);
      const double h = 1e-5;
      // skip the few samples whose stencil straddles a breakpoint
      if (s.locate(t - h) != s.locate(t + h)) continue;
      for (int d : {0, 1}) {
        const double fd = (s.evaluate(t + h, d) - s.evaluate(t - h, d)) / (2 * h);
        CHECK(testing::rel_close(fd, s.evaluate(t, d + 1), 1e-6, 1.0));
      }
    }
  }
}

TEST_CASE("taylor shift and formal derivative") {
  const Coefficients c{1, -2, 0.5, 3};
  const auto d = poly::derivative(c, 1);
  CHECK(d == Coefficients{-2, 1, 9, 0});
  CHECK(poly::derivative(c, 4) == Coefficients{});
  for (double shift : {-1.5, 0.0, 0.25, 2.0}) {
    const auto sh = poly::shifted(c, shift);
    for (double t : {-1.0, 0.0, 0.3, 1.7}) CHECK(poly::evaluate(sh, t) == doctest::Approx(poly::evaluate(c, t + shift)));
  }
  CHECK(poly::degree(c) == 3);
  CHECK(poly::degree(Coefficients{2, 0, 0, 0}) == 0);
  CHECK(poly::degree(Coefficients{}) == -1);
}

TEST_CASE("restriction keeps values and cuts breakpoints") {
  std::mt19937_64 rng(3);
  const auto x = testing::random_nodes(rng, 5, 0.5, 1.0);
  const auto s = testing::random_hermite(rng, x);
  const double a = 0.5 * (x[0] + x[1]);
  const double b = x[3];
  const auto r = s.restricted(a, b);
  CHECK(r.domain_begin() == a);
  CHECK(r.domain_end() == b);
  CHECK(r.piece_count() == 3);
  for (double t : linspace(a, b, 50)) CHECK(r(t) == doctest::Approx(s(t)).epsilon(1e-12));
  CHECK_THROWS_AS(s.restricted(x[0] - 1, b), ValidationError);
  CHECK_THROWS_AS(s.restricted(b, a), ValidationError);
}

TEST_CASE("linspace hits both ends") {
  const auto x = linspace(0.1, 0.7, 7);
  CHECK(x.front() == 0.1);
  CHECK(x.back() == 0.7);
  CHECK(x[3] == doctest::Approx(0.4));
  CHECK_THROWS_AS(linspace(0, 1, 1), ValidationError);
}
