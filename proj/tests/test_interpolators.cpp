#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "sobtrace/energy.hpp"
#include "sobtrace/interpolators.hpp"
#include "sobtrace/norms.hpp"
#include "support.hpp"

using namespace sobtrace;
using testing::rel_close;

namespace {

TraceData trace(std::vector<double> x, std::vector<double> f) { return {make_nodes(std::move(x)), std::move(f)}; }

const double kExponents[] = {1.0, 1.5, 2.0, 4.0};

}  // namespace

TEST_CASE("phi1 examples") {
  const auto c = phi1(trace({0, 2, 3}, {1.5, 1.5, 1.5}));
  for (double t : linspace(0, 3, 13)) CHECK(c(t) == 1.5);
  CHECK(sobolev_seminorm_p(c, 1, 2) == 0.0);

  const auto id = phi1(trace({0, 1}, {0, 1}));
  for (double t : linspace(0, 1, 9)) CHECK(id(t) == doctest::Approx(t));

  CHECK(phi1(trace({0, 1, 3}, {0, 1, 9}))(2.0) == doctest::Approx(5));
}

TEST_CASE("phi1 energy examples") {
  CHECK(phi1_energy_p(trace({0, 1, 3}, {0, 1, 9}), 2) == doctest::Approx(33));
  CHECK(phi1_energy_p(trace({0, 1, 3}, {2, 2, 2}), 1.5) == 0.0);
  CHECK(phi1_energy_p(trace({0, 1}, {0, 1}), 3) == doctest::Approx(1));
}

TEST_CASE("phi2 on hat data") {
  const auto d = trace({0, 1, 2}, {0, 1, 0});
  const auto st = phi2_stencils(d);
  CHECK(st[1].alpha == doctest::Approx(0));
  CHECK(st[1].dd2 == doctest::Approx(-1));
  CHECK(st[0].alpha == doctest::Approx(2));
  CHECK(st[2].alpha == doctest::Approx(-2));

  const auto s = phi2(d);
  CHECK(s.piece_count() == 4);
  CHECK(s(1.5) == doctest::Approx(0.5));
  CHECK(s.evaluate(1.5, 1) == doctest::Approx(-1));
  CHECK(s.evaluate(0.0, 1) == doctest::Approx(2));
  CHECK(s.evaluate(1.0, 1) == doctest::Approx(0));
  CHECK(phi2_energy_p(d, 2) == doctest::Approx(32));
  CHECK(sobolev_seminorm_p(s, 2, 2) == doctest::Approx(32).epsilon(1e-12));
}

TEST_CASE("kernel energy values") {
  CHECK(kernel_energy(1) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(kernel_energy(2) == doctest::Approx(8).epsilon(1e-15));
  // independent derivations (tests/oracles/frozen_values.py)
  CHECK(kernel_energy(1.5) == doctest::Approx(3.5503222663959364).epsilon(1e-14));
  CHECK(kernel_energy(4) == doctest::Approx(281.6).epsilon(1e-14));
}

TEST_CASE("two nodes degenerate to the linear interpolant") {
  const auto d = trace({1, 3}, {2, -1});
  const auto s = phi2(d);
  const auto l = phi1(d);
  for (double t : linspace(1, 3, 21)) CHECK(s(t) == doctest::Approx(l(t)));
  CHECK(phi2_energy_p(d, 2) == 0.0);
}

TEST_CASE("affine data is reproduced") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::random_nodes(rng, 2 + trial % 9, 0.1, 2.0, -3.0);
    const double a = 1.7 - 0.3 * trial;
    const double b = 0.4 * trial;
    std::vector<double> f;
    for (double t : x) f.push_back(a * t + b);
    const TraceData d(make_nodes(x), f);
    const auto s = phi2(d);
    for (double t : linspace(x.front(), x.back(), 50)) CHECK(s(t) == doctest::Approx(a * t + b).epsilon(1e-11).scale(10));
    CHECK(phi2_energy_p(d, 1.5) <= 1e-20);
    for (const auto& st : phi2_stencils(d)) CHECK(st.alpha == doctest::Approx(a).epsilon(1e-11));
  }
}

TEST_CASE("interpolation, C1 and the structural conditions on random data") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testing::random_trace(rng, 3 + trial % 25, 0.05, 2.0);
    const auto& x = d.nodes();
    const auto s = phi2(d);
    const auto l = phi1(d);
    const auto st = phi2_stencils(d);
    const double scale = d.scale();
    CHECK(smoothness_defect(s, 0) <= 1e-12 * scale);
    CHECK(smoothness_defect(s, 1) <= 1e-9 * scale / x.min_step());
    CHECK(smoothness_defect(l, 0) <= 1e-12 * scale);
    for (std::size_t n = 0; n <= x.gaps(); ++n) {
      CHECK(rel_close(s(x[n]), d.value(n), 1e-10, scale));
      CHECK(rel_close(l(x[n]), d.value(n), 1e-10, scale));
      CHECK(rel_close(s.evaluate(x[n], 1), st[n].alpha, 1e-9, 1.0));
    }
    for (std::size_t n = 0; n < x.gaps(); ++n) {
      const double mu = x.midpoint(n);
      const double secant = (d.value(n + 1) - d.value(n)) / x.step(n);
      CHECK(rel_close(s(mu), 0.5 * (d.value(n) + d.value(n + 1)), 1e-9, scale));
      CHECK(rel_close(s.evaluate(mu, 1), secant, 1e-9, 1.0));
    }
    for (std::size_t n = 1; n < x.gaps(); ++n) {
      const double hl = x.step(n - 1);
      const double hr = x.step(n);
      const double left = (d.value(n) - d.value(n - 1)) / hl;
      const double right = (d.value(n + 1) - d.value(n)) / hr;
      CHECK(rel_close(st[n].alpha, (hr * left + hl * right) / (hl + hr), 1e-12, 1.0));
    }
  }
}

TEST_CASE("energy identities") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testing::random_trace(rng, 3 + trial % 20, 0.05, 2.0);
    const double p = kExponents[trial % 4];
    const double e1 = phi1_energy_p(d, p);
    CHECK(rel_close(e1, eq_norm_L_p(d, {1, p}), 1e-12));
    CHECK(rel_close(e1, sobolev_seminorm_p(phi1(d), 1, p), 1e-9));

    const double e2 = phi2_energy_p(d, p);
    CHECK(rel_close(e2, sobolev_seminorm_p(phi2(d), 2, p), 1e-8));
    // interior pairs give exactly Q(p) times the eq_L weight, the edges at most as much again
    const double eqL = eq_norm_L_p(d, {2, p});
    CHECK(e2 >= kernel_energy(p) * eqL * (1 - 1e-12));
    CHECK(e2 <= 2 * kernel_energy(p) * eqL * (1 + 1e-12));
  }
}

TEST_CASE("a value only moves phi2 near its node") {
  std::mt19937_64 rng(12);
  const auto d = testing::random_trace(rng, 12, 0.3, 1.5);
  const auto& x = d.nodes();
  const std::size_t N = x.gaps();
  const auto base = phi2(d);
  for (std::size_t k = 0; k <= N; ++k) {
    std::vector<double> f(d.values().begin(), d.values().end());
    f[k] += 0.75;
    const auto moved = phi2(TraceData(x, f));
    // edge stencils read the three nearest values, so the window edges move too
    const double lo = k <= 2 ? x.front() : x.midpoint(k - 2);
    const double hi = k + 2 >= N ? x.back() : x.midpoint(k + 1);
    for (double t : linspace(x.front(), x.back(), 2001)) {
      if (t < lo - 1e-12 || t > hi + 1e-12) CHECK(moved(t) == base(t));
    }
  }
}

TEST_CASE("every piece depends on at most three values") {
  std::mt19937_64 rng(13);
  const auto d = testing::random_trace(rng, 9);
  const auto& x = d.nodes();
  const auto base = phi2(d);
  for (std::size_t j = 0; j < base.piece_count(); ++j) {
    std::set<std::size_t> reads;
    for (std::size_t k = 0; k <= x.gaps(); ++k) {
      std::vector<double> f(d.values().begin(), d.values().end());
      f[k] += 1.0;
      if (phi2(TraceData(x, f)).piece(j) != base.piece(j)) reads.insert(k);
    }
    CHECK(reads.size() <= 3);
  }
  for (std::size_t j = 0; j < x.gaps(); ++j) {
    std::set<std::size_t> reads;
    for (std::size_t k = 0; k <= x.gaps(); ++k) {
      std::vector<double> f(d.values().begin(), d.values().end());
      f[k] += 1.0;
      if (phi1(TraceData(x, f)).piece(j) != phi1(d).piece(j)) reads.insert(k);
    }
    CHECK(reads.size() == 2);
  }
}
