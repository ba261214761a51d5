#include "sobtrace/interpolators.hpp"

#include <cmath>

#include "sobtrace/divdiff.hpp"

namespace sobtrace {

PiecewisePolynomial phi1(const TraceData& data) {
  const auto& x = data.nodes();
  std::vector<double> bp(x.values().begin(), x.values().end());
  std::vector<Coefficients> pieces;
  pieces.reserve(x.gaps());
  for (std::size_t n = 0; n < x.gaps(); ++n) {
    const double slope = (data.value(n + 1) - data.value(n)) / x.step(n);
    pieces.push_back({data.value(n), slope, 0.0, 0.0});
  }
  return PiecewisePolynomial(std::move(bp), std::move(pieces));
}

std::vector<Phi2Stencil> phi2_stencils(const TraceData& data) {
  const auto& x = data.nodes();
  const std::size_t N = x.gaps();
  std::vector<Phi2Stencil> st(N + 1);
  for (std::size_t n = 0; n <= N; ++n) st[n].n = n;

  if (N == 1) {
    const double slope = (data.value(1) - data.value(0)) / x.step(0);
    st[0].alpha = st[1].alpha = slope;
    return st;
  }

  const auto table = divided_differences(x, data.values(), 2);
  for (std::size_t n = 1; n < N; ++n) {
    const double hl = x.step(n - 1);
    const double hr = x.step(n);
    st[n].alpha = (hr * table.at(1, n - 1) + hl * table.at(1, n)) / (hl + hr);
    st[n].dd2 = table.at(2, n - 1);
  }
  // Edges: slope of the quadratic through the three nearest nodes.
  st[0].dd2 = st[1].dd2;
  st[0].alpha = table.at(1, 0) - x.step(0) * st[0].dd2;
  st[N].dd2 = st[N - 1].dd2;
  st[N].alpha = table.at(1, N - 1) + x.step(N - 1) * st[N].dd2;
  return st;
}

PiecewisePolynomial phi2(const TraceData& data) {
  const auto& x = data.nodes();
  const std::size_t N = x.gaps();
  const auto st = phi2_stencils(data);

  std::vector<double> bp;
  std::vector<Coefficients> pieces;
  bp.reserve(2 * N + 1);
  pieces.reserve(2 * N);
  for (std::size_t n = 0; n < N; ++n) {
    const double h = x.step(n);
    const double mu = x.midpoint(n);
    // [lambda_n, mu_n], t = x - lambda_n.
    const double dl = st[n].dd2;
    bp.push_back(x[n]);
    pieces.push_back({data.value(n), st[n].alpha, 4.0 * dl, -4.0 * dl / h});
    // [mu_n, lambda_{n+1}], expanded about lambda_{n+1} and shifted to t = x - mu_n.
    const double dr = st[n + 1].dd2;
    const Coefficients about_node{data.value(n + 1), st[n + 1].alpha, 4.0 * dr, 4.0 * dr / h};
    bp.push_back(mu);
    pieces.push_back(poly::shifted(about_node, -0.5 * h));
  }
  bp.push_back(x.back());
  return PiecewisePolynomial(std::move(bp), std::move(pieces));
}

double phi1_energy_p(const TraceData& data, double p) {
  check_exponent(p);
  const auto& x = data.nodes();
  double sum = 0.0;
  for (std::size_t n = 0; n < x.gaps(); ++n) {
    const double slope = (data.value(n + 1) - data.value(n)) / (x[n + 1] - x[n]);
    sum += (x[n + 1] - x[n]) * std::pow(std::abs(slope), p);
  }
  return sum;
}

double kernel_energy(double p) {
  check_exponent(p);
  return (std::pow(8.0, p + 1.0) + std::pow(4.0, p + 1.0)) / (24.0 * (p + 1.0));
}

double phi2_energy_p(const TraceData& data, double p) {
  check_exponent(p);
  const auto& x = data.nodes();
  const auto st = phi2_stencils(data);
  double sum = 0.0;
  for (std::size_t n = 0; n < x.gaps(); ++n) {
    sum += x.step(n) * (std::pow(std::abs(st[n].dd2), p) + std::pow(std::abs(st[n + 1].dd2), p));
  }
  return sum * kernel_energy(p);
}

}  // namespace sobtrace
