#include "sobtrace/pwpoly.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "sobtrace/errors.hpp"

namespace sobtrace {

namespace poly {

double evaluate(const Coefficients& c, double t, int derivative) {
  if (derivative > 3) return 0.0;
  const Coefficients d = poly::derivative(c, derivative);
  return ((d[3] * t + d[2]) * t + d[1]) * t + d[0];
}

Coefficients derivative(const Coefficients& c, int k) {
  Coefficients d = c;
  for (int step = 0; step < k; ++step) {
    d = {d[1], 2.0 * d[2], 3.0 * d[3], 0.0};
  }
  return d;
}

Coefficients shifted(const Coefficients& c, double shift) {
  // Taylor expansion about `shift`: a_k = P^{(k)}(shift) / k!.
  return {evaluate(c, shift, 0), evaluate(c, shift, 1), evaluate(c, shift, 2) / 2.0, evaluate(c, shift, 3) / 6.0};
}

int degree(const Coefficients& c) {
  for (int k = 3; k >= 0; --k) {
    if (c[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

}  // namespace poly

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coefficients> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2) throw ValidationError("piecewise polynomial needs at least 2 breakpoints");
  if (pieces_.size() + 1 != breakpoints_.size()) {
    throw ValidationError(
        fmt::format("{} breakpoints need {} pieces, got {}", breakpoints_.size(), breakpoints_.size() - 1, pieces_.size()));
  }
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (!std::isfinite(breakpoints_[j])) throw ValidationError(fmt::format("breakpoint {} is not finite", j), j);
    if (j > 0 && !(breakpoints_[j - 1] < breakpoints_[j])) {
      throw ValidationError(fmt::format("breakpoints not strictly increasing at index {}", j), j);
    }
  }
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    for (double c : pieces_[j]) {
      if (!std::isfinite(c)) throw ValidationError(fmt::format("piece {} has a non-finite coefficient", j), j);
    }
  }
}

std::size_t PiecewisePolynomial::locate(double x) const {
  if (!(x >= domain_begin() && x <= domain_end())) {
    throw ValidationError(fmt::format("x = {} outside domain [{}, {}]", x, domain_begin(), domain_end()));
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto j = static_cast<std::size_t>(it - breakpoints_.begin());
  return std::min(j == 0 ? 0 : j - 1, pieces_.size() - 1);
}

double PiecewisePolynomial::evaluate(double x, int derivative) const {
  const std::size_t j = locate(x);
  return poly::evaluate(pieces_[j], x - breakpoints_[j], derivative);
}

double PiecewisePolynomial::left_limit(std::size_t j, int derivative) const {
  return poly::evaluate(pieces_[j], 0.0, derivative);
}

double PiecewisePolynomial::right_limit(std::size_t j, int derivative) const {
  return poly::evaluate(pieces_[j], piece_length(j), derivative);
}

PiecewisePolynomial PiecewisePolynomial::derivative(int k) const {
  std::vector<Coefficients> d;
  d.reserve(pieces_.size());
  for (const auto& c : pieces_) d.push_back(poly::derivative(c, k));
  return PiecewisePolynomial(breakpoints_, std::move(d));
}

PiecewisePolynomial PiecewisePolynomial::restricted(double a, double b) const {
  if (!(a < b) || a < domain_begin() || b > domain_end()) {
    throw ValidationError(fmt::format("[{}, {}] is not a subinterval of [{}, {}]", a, b, domain_begin(), domain_end()));
  }
  std::vector<double> bp{a};
  std::vector<Coefficients> pieces;
  const std::size_t first = locate(a);
  for (std::size_t j = first; j < pieces_.size() && breakpoints_[j] < b; ++j) {
    const double lo = std::max(a, breakpoints_[j]);
    const double hi = std::min(b, breakpoints_[j + 1]);
    if (!(lo < hi)) continue;
    pieces.push_back(poly::shifted(pieces_[j], lo - breakpoints_[j]));
    bp.push_back(hi);
  }
  return PiecewisePolynomial(std::move(bp), std::move(pieces));
}

double smoothness_defect(const PiecewisePolynomial& s, int order) {
  double defect = 0.0;
  for (std::size_t j = 0; j + 1 < s.piece_count(); ++j) {
    defect = std::max(defect, std::abs(s.right_limit(j, order) - s.left_limit(j + 1, order)));
  }
  return defect;
}

std::vector<double> linspace(double a, double b, std::size_t count) {
  if (count < 2) throw ValidationError("linspace needs at least 2 points");
  std::vector<double> x(count);
  const double width = b - a;
  const auto last = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) x[k] = a + width * (static_cast<double>(k) / last);
  x.back() = b;
  return x;
}

}  // namespace sobtrace
