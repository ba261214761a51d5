#include "sobtrace/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "sobtrace/errors.hpp"
#include "sobtrace/norms.hpp"

namespace sobtrace {

void QuadratureSpec::validate() const {
  if (points_per_segment < 2) throw ValidationError("points_per_segment must be >= 2");
  if (refinement_limit < 0) throw ValidationError("refinement_limit must be >= 0");
  if (!(relative_tolerance > 0.0)) throw ValidationError("relative_tolerance must be > 0");
}

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw ValidationError("Gauss-Legendre rule needs at least one point");
  const auto n = static_cast<std::size_t>(points);
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

double bisect_root(const Coefficients& c, double lo, double hi) {
  double flo = poly::evaluate(c, lo);
  for (int iter = 0; iter < 200 && lo < hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = poly::evaluate(c, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Drops coefficients that are negligible on [0, length].
Coefficients trimmed(const Coefficients& c, double length) {
  double biggest = 0.0;
  for (std::size_t k = 0; k < 4; ++k) biggest = std::max(biggest, std::abs(c[k]) * std::pow(length, static_cast<double>(k)));
  Coefficients out = c;
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(c[k]) * std::pow(length, static_cast<double>(k)) <= 1e-14 * biggest) out[k] = 0.0;
  }
  return out;
}

}  // namespace

std::vector<double> roots_in(const Coefficients& raw, double length) {
  const Coefficients c = trimmed(raw, length);
  std::vector<double> roots;
  switch (poly::degree(c)) {
    case -1:
    case 0:
      break;
    case 1:
      roots.push_back(-c[0] / c[1]);
      break;
    case 2: {
      const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
      if (disc < 0.0) break;
      const double s = std::sqrt(disc);
      const double q = -0.5 * (c[1] + std::copysign(s, c[1]));
      if (q != 0.0) {
        roots.push_back(q / c[2]);
        roots.push_back(c[0] / q);
      } else {
        roots.push_back(0.0);
      }
      break;
    }
    default: {
      // Monotone brackets between the critical points, then bisection.
      std::vector<double> cuts{0.0};
      for (double t : roots_in(poly::derivative(c, 1), length)) cuts.push_back(t);
      cuts.push_back(length);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double fa = poly::evaluate(c, cuts[k]);
        const double fb = poly::evaluate(c, cuts[k + 1]);
        if (fa == 0.0) roots.push_back(cuts[k]);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) roots.push_back(bisect_root(c, cuts[k], cuts[k + 1]));
      }
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  const double merge = 1e-14 * length;
  std::vector<double> inside;
  for (double t : roots) {
    if (!(t > merge && t < length - merge)) continue;
    if (!inside.empty() && t - inside.back() <= merge) continue;
    inside.push_back(t);
  }
  return inside;
}

namespace {

struct Integrator {
  const GaussLegendreRule& rule;
  const QuadratureSpec& spec;
  double p;
  double abs_floor;
  double worst_error = 0.0;
  bool failed = false;

  double gauss(const Coefficients& c, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * std::pow(std::abs(poly::evaluate(c, mid + half * rule.nodes[i])), p);
    }
    return sum * half;
  }

  double adaptive(const Coefficients& c, double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss(c, a, mid);
    const double right = gauss(c, mid, b);
    const double refined = left + right;
    const double err = std::abs(refined - whole);
    if (err <= std::max(spec.relative_tolerance * std::abs(refined), abs_floor * (b - a))) return refined;
    if (depth >= spec.refinement_limit || !(a < mid && mid < b)) {
      failed = true;
      worst_error += err;
      return refined;
    }
    return adaptive(c, a, mid, left, depth + 1) + adaptive(c, mid, b, right, depth + 1);
  }
};

}  // namespace

double sobolev_seminorm_p(const PiecewisePolynomial& s, int r, double p, const QuadratureSpec& spec) {
  if (r < 0 || r > 2) throw ValidationError(fmt::format("derivative order must be 0, 1 or 2, got {}", r));
  check_exponent(p);
  spec.validate();
  const auto rule = gauss_legendre(spec.points_per_segment);

  struct Segment {
    Coefficients c;
    double a;
    double b;
  };
  std::vector<Segment> segments;
  for (std::size_t j = 0; j < s.piece_count(); ++j) {
    const Coefficients d = poly::derivative(s.piece(j), r);
    if (poly::degree(d) < 0) continue;
    double a = 0.0;
    for (double t : roots_in(d, s.piece_length(j))) {
      segments.push_back({d, a, t});
      a = t;
    }
    segments.push_back({d, a, s.piece_length(j)});
  }

  Integrator integ{rule, spec, p, 0.0};
  std::vector<double> coarse(segments.size());
  double rough = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    coarse[k] = integ.gauss(segments[k].c, segments[k].a, segments[k].b);
    rough += coarse[k];
  }
  const double span = s.domain_end() - s.domain_begin();
  integ.abs_floor = spec.relative_tolerance * std::abs(rough) / span;

  // Fixed summation order: segment index.
  double total = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    total += integ.adaptive(segments[k].c, segments[k].a, segments[k].b, coarse[k], 0);
  }
  if (integ.failed && integ.worst_error > spec.relative_tolerance * std::abs(total)) {
    throw ConvergenceError(fmt::format("quadrature did not reach relative tolerance {} (achieved {})",
                                       spec.relative_tolerance, integ.worst_error / std::abs(total)),
                           total, integ.worst_error / std::abs(total));
  }
  return total;
}

double w_norm_p(const PiecewisePolynomial& s, int r, double p, const QuadratureSpec& spec) {
  return sobolev_seminorm_p(s, 0, p, spec) + sobolev_seminorm_p(s, r, p, spec);
}

}  // namespace sobtrace
