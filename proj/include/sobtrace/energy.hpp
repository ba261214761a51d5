#pragma once

#include <vector>

#include "sobtrace/pwpoly.hpp"

namespace sobtrace {

struct QuadratureSpec {
  int points_per_segment = 16;
  /// Maximum bisection depth per root-free sub-segment.
  int refinement_limit = 40;
  double relative_tolerance = 1e-10;

  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int points);

/// Real roots of the polynomial strictly inside (0, length), ascending,
/// with roots closer than 1e-14 * length merged.
std::vector<double> roots_in(const Coefficients& c, double length);

/// int over the domain of |s^{(r)}|^p, r in {0, 1, 2}, p >= 1. Every piece is
/// split at the real roots of its r-th derivative and integrated by adaptive
/// Gauss-Legendre. Throws ConvergenceError (with best estimate) when the
/// tolerance is not met within the refinement limit.
double sobolev_seminorm_p(const PiecewisePolynomial& s, int r, double p, const QuadratureSpec& spec = {});

/// int |s|^p + int |s^{(r)}|^p.
double w_norm_p(const PiecewisePolynomial& s, int r, double p, const QuadratureSpec& spec = {});

}  // namespace sobtrace
