#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace sobtrace {

/// Coefficients c0 + c1 t + c2 t^2 + c3 t^3 in a local coordinate t.
using Coefficients = std::array<double, 4>;

namespace poly {

/// k-th derivative of the polynomial at t (Horner).
double evaluate(const Coefficients& c, double t, int derivative = 0);
/// Coefficients of t -> P^{(k)}(t).
Coefficients derivative(const Coefficients& c, int k);
/// Coefficients of t -> P(t + shift).
Coefficients shifted(const Coefficients& c, double shift);
/// Highest index with a nonzero coefficient; -1 for the zero polynomial.
int degree(const Coefficients& c);

}  // namespace poly

/// Piecewise cubic on breakpoints b_0 < ... < b_M. Piece j lives on
/// [b_j, b_{j+1}] and is stored in the local coordinate t = x - b_j.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coefficients> pieces);

  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const Coefficients> pieces() const { return pieces_; }
  const Coefficients& piece(std::size_t j) const { return pieces_[j]; }
  double piece_begin(std::size_t j) const { return breakpoints_[j]; }
  double piece_end(std::size_t j) const { return breakpoints_[j + 1]; }
  double piece_length(std::size_t j) const { return breakpoints_[j + 1] - breakpoints_[j]; }
  double domain_begin() const { return breakpoints_.front(); }
  double domain_end() const { return breakpoints_.back(); }

  /// Index of the piece governing x: the right piece at interior breakpoints,
  /// the last piece at the right end. Throws ValidationError outside the domain.
  std::size_t locate(double x) const;

  double evaluate(double x, int derivative = 0) const;
  double operator()(double x) const { return evaluate(x); }

  /// Value of the derivative on piece j at its left (t = 0) or right end.
  double left_limit(std::size_t j, int derivative) const;
  double right_limit(std::size_t j, int derivative) const;

  PiecewisePolynomial derivative(int k) const;
  /// Same function on [a, b], a subinterval of the domain.
  PiecewisePolynomial restricted(double a, double b) const;

  friend bool operator==(const PiecewisePolynomial&, const PiecewisePolynomial&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<Coefficients> pieces_;
};

/// Largest jump |left limit - right limit| of the order-th derivative over
/// interior breakpoints. Zero for a single piece.
double smoothness_defect(const PiecewisePolynomial& s, int order);

/// `count` equally spaced abscissae from a to b inclusive (count >= 2).
std::vector<double> linspace(double a, double b, std::size_t count);

}  // namespace sobtrace
