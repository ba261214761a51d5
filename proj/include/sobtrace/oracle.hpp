#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sobtrace/norms.hpp"
#include "sobtrace/pwpoly.hpp"

namespace sobtrace {

enum class OracleMethod { exact_linear, exact_natural_spline, irls_grid };

const char* to_string(OracleMethod method);

/// Grid function: minimizer of a discretized problem.
struct SampledFunction {
  std::vector<double> x;
  std::vector<double> values;
};

/// Attained p-th power of the trace (semi)norm and the extension achieving it.
struct OracleResult {
  double value_p = 0.0;
  std::variant<PiecewisePolynomial, SampledFunction> minimizer;
  OracleMethod method = OracleMethod::exact_linear;
  int iterations = 0;
  /// Relative objective change of the last iteration (0 for exact methods).
  double residual = 0.0;
  bool converged = true;
  int grid_per_gap = 0;
  /// Smoothed objective after each accepted iterate; non-increasing.
  std::vector<double> objective_history;
};

struct OracleOptions {
  int grid_per_gap = 64;
  double tol = 1e-10;
  int max_iterations = 2000;
  /// Force a method; by default the exact one is used whenever it applies.
  std::optional<OracleMethod> method;
};

/// C^2 cubic interpolant with S'' = 0 at both ends.
PiecewisePolynomial natural_cubic_spline(const TraceData& data);
/// int |S''|^2 of the natural spline, from its piecewise linear S''.
double natural_spline_energy(const TraceData& data);

/// inf { int |F^{(r)}|^p : F(lambda_n) = f(lambda_n) } over [lambda_0, lambda_N],
/// free at both ends. r = 1 is solved exactly by the linear interpolant,
/// r = 2 with p = 2 by the natural spline, anything else (or a forced
/// irls_grid) by iteratively reweighted least squares on a uniform sub-grid.
OracleResult oracle_L(const TraceData& data, const NormParams& params, const OracleOptions& options = {});

/// inf { int |F|^p + int |F^{(r)}|^p : F(lambda_n) = f(lambda_n) }, always on the grid.
OracleResult oracle_W(const TraceData& data, const NormParams& params, const OracleOptions& options = {});

}  // namespace sobtrace
