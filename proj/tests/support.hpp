#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sobtrace/grid.hpp"
#include "sobtrace/norms.hpp"
#include "sobtrace/pwpoly.hpp"

namespace testing {

inline bool rel_close(double a, double b, double tol, double floor = 1e-300) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

inline std::vector<double> random_nodes(std::mt19937_64& rng, std::size_t count, double lo, double hi,
                                        double start = 0.0) {
  std::uniform_real_distribution<double> gap(lo, hi);
  std::vector<double> x{start};
  while (x.size() < count) x.push_back(x.back() + gap(rng));
  return x;
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t count, double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> v(count);
  for (auto& y : v) y = u(rng);
  return v;
}

inline sobtrace::TraceData random_trace(std::mt19937_64& rng, std::size_t count, double lo = 0.2, double hi = 2.0) {
  auto nodes = sobtrace::make_nodes(random_nodes(rng, count, lo, hi));
  return {nodes, random_values(rng, count)};
}

/// C^1 piecewise cubic through random values with random slopes.
inline sobtrace::PiecewisePolynomial random_hermite(std::mt19937_64& rng, const std::vector<double>& x) {
  const auto y = random_values(rng, x.size());
  const auto m = random_values(rng, x.size(), 2.0);
  std::vector<sobtrace::Coefficients> pieces;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double h = x[j + 1] - x[j];
    const double s = (y[j + 1] - y[j]) / h;
    pieces.push_back({y[j], m[j], (3.0 * s - 2.0 * m[j] - m[j + 1]) / h, (m[j] + m[j + 1] - 2.0 * s) / (h * h)});
  }
  return {x, pieces};
}

inline std::vector<double> sample(const sobtrace::PiecewisePolynomial& s, const std::vector<double>& x) {
  std::vector<double> out;
  for (double t : x) out.push_back(s(t));
  return out;
}

}  // namespace testing
