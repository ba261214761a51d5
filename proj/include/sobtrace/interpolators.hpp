#pragma once

#include <cstddef>
#include <vector>

#include "sobtrace/norms.hpp"
#include "sobtrace/pwpoly.hpp"

namespace sobtrace {

/// Local data of the cubic interpolator around node n: the node slope
/// alpha_n and the second divided difference f(lambda_{n-1}, lambda_n, lambda_{n+1}).
struct Phi2Stencil {
  std::size_t n = 0;
  double alpha = 0.0;
  double dd2 = 0.0;
};

/// Piecewise linear interpolant; breakpoints are the nodes.
PiecewisePolynomial phi1(const TraceData& data);

/// One stencil per node (N+1 in total). Interior stencils use
///   alpha_n = (h_n f(lambda_{n-1},lambda_n) + h_{n-1} f(lambda_n,lambda_{n+1})) / (h_{n-1} + h_n).
/// The two edge stencils reuse the nearest interior second difference and take
/// alpha from the quadratic through the three nearest nodes. With two nodes
/// every dd2 is 0 and alpha is the secant slope.
std::vector<Phi2Stencil> phi2_stencils(const TraceData& data);

/// C^1 cubic interpolant on breakpoints lambda_0, mu_0, lambda_1, ..., lambda_N.
/// On [lambda_n, mu_n] and [mu_{n-1}, lambda_n] it equals
///   f(lambda_n) + alpha_n (x - lambda_n) + h^2 dd2_n q(|x - lambda_n| / h),
/// q(y) = 4 (y^2 - y^3), h the adjacent gap.
PiecewisePolynomial phi2(const TraceData& data);

/// sum_n h_n |f(lambda_n, lambda_{n+1})|^p, equal to int |(phi1 f)'|^p.
double phi1_energy_p(const TraceData& data, double p);

/// int_0^{1/2} |q''(y)|^p dy = (8^{p+1} + 4^{p+1}) / (24 (p + 1)).
double kernel_energy(double p);

/// Exact int |(phi2 f)''|^p: every half-gap piece next to node n contributes
/// h |dd2_n|^p kernel_energy(p), h being the full gap it belongs to.
double phi2_energy_p(const TraceData& data, double p);

}  // namespace sobtrace
