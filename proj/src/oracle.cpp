#include "sobtrace/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <fmt/core.h>

#include "sobtrace/errors.hpp"
#include "sobtrace/interpolators.hpp"

namespace sobtrace {

const char* to_string(OracleMethod method) {
  switch (method) {
    case OracleMethod::exact_linear: return "exact_linear";
    case OracleMethod::exact_natural_spline: return "exact_natural_spline";
    case OracleMethod::irls_grid: return "irls_grid";
  }
  return "?";
}

PiecewisePolynomial natural_cubic_spline(const TraceData& data) {
  const auto& x = data.nodes();
  const std::size_t N = x.gaps();
  // Second-derivative moments M_1..M_{N-1}; M_0 = M_N = 0. Thomas algorithm.
  std::vector<double> moments(N + 1, 0.0);
  if (N >= 2) {
    const std::size_t m = N - 1;
    std::vector<double> diag(m), upper(m), rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t n = i + 1;
      const double hl = x.step(n - 1);
      const double hr = x.step(n);
      diag[i] = 2.0 * (hl + hr);
      upper[i] = hr;
      rhs[i] = 6.0 * ((data.value(n + 1) - data.value(n)) / hr - (data.value(n) - data.value(n - 1)) / hl);
    }
    for (std::size_t i = 1; i < m; ++i) {
      const double factor = x.step(i) / diag[i - 1];  // sub-diagonal entry h_{n-1} with n = i + 1
      diag[i] -= factor * upper[i - 1];
      rhs[i] -= factor * rhs[i - 1];
    }
    moments[m] = rhs[m - 1] / diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) moments[i + 1] = (rhs[i] - upper[i] * moments[i + 2]) / diag[i];
  }

  std::vector<double> bp(x.values().begin(), x.values().end());
  std::vector<Coefficients> pieces;
  pieces.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double h = x.step(n);
    const double slope = (data.value(n + 1) - data.value(n)) / h - h * (2.0 * moments[n] + moments[n + 1]) / 6.0;
    pieces.push_back({data.value(n), slope, 0.5 * moments[n], (moments[n + 1] - moments[n]) / (6.0 * h)});
  }
  return PiecewisePolynomial(std::move(bp), std::move(pieces));
}

double natural_spline_energy(const TraceData& data) {
  const auto s = natural_cubic_spline(data);
  const auto& x = data.nodes();
  double sum = 0.0;
  for (std::size_t n = 0; n < x.gaps(); ++n) {
    const double a = s.left_limit(n, 2);
    const double b = s.right_limit(n, 2);
    sum += x.step(n) * (a * a + a * b + b * b) / 3.0;
  }
  return sum;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discretized objective sum_rows weight * |A u + b|^p over the unknown
/// (non-node) grid values u.
struct GridProblem {
  std::vector<double> x;
  std::vector<long> unknown_of;  // grid index -> unknown index, -1 if pinned
  std::vector<double> pinned;    // grid values (pins only)
  SparseMatrix A;
  Eigen::VectorXd b;
  Eigen::VectorXd weight;
};

struct Row {
  std::array<std::pair<std::size_t, double>, 3> entries{};
  std::size_t size = 0;
  double weight = 0.0;
};

GridProblem build_grid(const TraceData& data, int r, bool with_value_term, int grid_per_gap) {
  const auto& nodes = data.nodes();
  const std::size_t N = nodes.gaps();
  const auto cells = static_cast<std::size_t>(grid_per_gap) + 1;

  GridProblem g;
  g.x.reserve(N * cells + 1);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < cells; ++k) {
      g.x.push_back(k == 0 ? nodes[n] : nodes[n] + nodes.step(n) * (static_cast<double>(k) / static_cast<double>(cells)));
    }
  }
  g.x.push_back(nodes.back());
  const std::size_t M = g.x.size();
  g.unknown_of.assign(M, -1);
  g.pinned.assign(M, 0.0);
  long unknowns = 0;
  for (std::size_t i = 0; i < M; ++i) {
    if (i % cells == 0) {
      g.pinned[i] = data.value(i / cells);
    } else {
      g.unknown_of[i] = unknowns++;
    }
  }

  std::vector<Row> rows;
  if (r == 2) {
    // Three-point second difference with weight (a + b) / 2 at interior points.
    for (std::size_t i = 1; i + 1 < M; ++i) {
      const double a = g.x[i] - g.x[i - 1];
      const double b = g.x[i + 1] - g.x[i];
      Row row;
      row.entries = {{{i - 1, 2.0 / (a * (a + b))}, {i, -2.0 / (a * b)}, {i + 1, 2.0 / (b * (a + b))}}};
      row.size = 3;
      row.weight = 0.5 * (a + b);
      rows.push_back(row);
    }
  } else {
    for (std::size_t i = 0; i + 1 < M; ++i) {
      const double d = g.x[i + 1] - g.x[i];
      Row row;
      row.entries[0] = {i, -1.0 / d};
      row.entries[1] = {i + 1, 1.0 / d};
      row.size = 2;
      row.weight = d;
      rows.push_back(row);
    }
  }
  if (with_value_term) {
    // Trapezoid weights.
    for (std::size_t i = 0; i < M; ++i) {
      Row row;
      row.entries[0] = {i, 1.0};
      row.size = 1;
      const double left = i > 0 ? g.x[i] - g.x[i - 1] : 0.0;
      const double right = i + 1 < M ? g.x[i + 1] - g.x[i] : 0.0;
      row.weight = 0.5 * (left + right);
      rows.push_back(row);
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  g.b = Eigen::VectorXd::Zero(static_cast<long>(rows.size()));
  g.weight.resize(static_cast<long>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto rk = static_cast<long>(k);
    g.weight[rk] = rows[k].weight;
    for (std::size_t e = 0; e < rows[k].size; ++e) {
      const auto [i, coeff] = rows[k].entries[e];
      if (g.unknown_of[i] >= 0) {
        triplets.emplace_back(rk, g.unknown_of[i], coeff);
      } else {
        g.b[rk] += coeff * g.pinned[i];
      }
    }
  }
  g.A.resize(static_cast<long>(rows.size()), unknowns);
  g.A.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

double smoothed_objective(const Eigen::VectorXd& residual, const Eigen::VectorXd& weight, double p, double eps) {
  double sum = 0.0;
  for (long k = 0; k < residual.size(); ++k) {
    const double d = residual[k];
    sum += weight[k] * (eps == 0.0 ? std::pow(std::abs(d), p) : std::pow(d * d + eps * eps, 0.5 * p));
  }
  return sum;
}

OracleResult irls(const TraceData& data, int r, double p, bool with_value_term, const OracleOptions& opt) {
  if (opt.grid_per_gap < 8) throw ValidationError(fmt::format("grid_per_gap must be >= 8, got {}", opt.grid_per_gap));
  if (!(opt.tol > 0.0)) throw ValidationError("tolerance must be > 0");
  const GridProblem g = build_grid(data, r, with_value_term, opt.grid_per_gap);

  OracleResult result{.value_p = 0.0,
                      .minimizer = SampledFunction{},
                      .method = OracleMethod::irls_grid,
                      .grid_per_gap = opt.grid_per_gap};

  const SparseMatrix At = g.A.transpose();
  Eigen::SimplicialLDLT<SparseMatrix> solver;
  bool analyzed = false;
  // Solves A^T diag(weight * omega) A x = A^T (weight * rhs).
  auto weighted_solve = [&](const Eigen::VectorXd& omega, const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
    const Eigen::VectorXd w = g.weight.cwiseProduct(omega);
    const SparseMatrix H = At * w.asDiagonal() * g.A;
    if (!analyzed) {
      solver.analyzePattern(H);
      analyzed = true;
    }
    solver.factorize(H);
    if (solver.info() != Eigen::Success) return {};
    return solver.solve(At * g.weight.cwiseProduct(rhs));
  };

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.b.size());
  Eigen::VectorXd u = g.A.cols() > 0 ? weighted_solve(ones, -g.b) : Eigen::VectorXd();
  Eigen::VectorXd residual = g.A * u + g.b;
  const double scale = residual.cwiseAbs().maxCoeff();

  const bool quadratic = p == 2.0;
  const double eps_floor = quadratic ? 0.0 : 1e-10 * std::max(scale, 1e-300);
  double eps = quadratic ? 0.0 : std::max(0.1 * scale, eps_floor);
  const double stage_tol = std::max(opt.tol, 1e-6);
  const double step = p < 2.0 ? 0.7 : 1.0;

  double current = smoothed_objective(residual, g.weight, p, eps);
  result.objective_history.push_back(current);
  result.converged = scale == 0.0 || g.A.cols() == 0;

  while (!result.converged && result.iterations < opt.max_iterations) {
    ++result.iterations;
    // Reweighted least-squares target (majorizer for p <= 2) and a Newton
    // step on the same smoothed objective; the lower of the two is kept.
    Eigen::VectorXd omega(residual.size());
    Eigen::VectorXd curvature(residual.size());
    Eigen::VectorXd slope(residual.size());
    for (long k = 0; k < residual.size(); ++k) {
      const double d = residual[k];
      const double s2 = d * d + eps * eps;
      omega[k] = quadratic ? 1.0 : std::pow(s2, 0.5 * (p - 2.0));
      slope[k] = omega[k] * d;
      curvature[k] = quadratic ? 1.0 : std::max(omega[k] * (eps * eps + (p - 1.0) * d * d) / s2, 1e-8 * omega[k]);
    }
    const Eigen::VectorXd irls_target = weighted_solve(omega, -g.b);
    const Eigen::VectorXd newton_step = quadratic ? Eigen::VectorXd() : weighted_solve(curvature, -slope);

    auto line_search = [&](const Eigen::VectorXd& direction, double tau) {
      std::pair<double, Eigen::VectorXd> best{current, Eigen::VectorXd()};
      if (direction.size() != u.size() || !direction.allFinite()) return best;
      for (int halving = 0; halving < 50; ++halving, tau *= 0.5) {
        Eigen::VectorXd trial = u + tau * direction;
        const double value = smoothed_objective(g.A * trial + g.b, g.weight, p, eps);
        if (value <= current) return std::pair<double, Eigen::VectorXd>{value, std::move(trial)};
      }
      return best;
    };
    auto candidate = line_search(irls_target.size() == u.size() ? Eigen::VectorXd(irls_target - u) : Eigen::VectorXd(), step);
    if (newton_step.size() == u.size()) {
      auto alt = line_search(newton_step, 1.0);
      if (alt.second.size() == u.size() && alt.first < candidate.first) candidate = std::move(alt);
    }
    double change = 0.0;
    if (candidate.second.size() == u.size()) {
      change = (current - candidate.first) / std::max(current, 1e-300);
      u = std::move(candidate.second);
      residual = g.A * u + g.b;
      current = candidate.first;
    }
    result.residual = change;
    result.objective_history.push_back(current);
    const bool final_stage = eps <= eps_floor;
    if (change < (final_stage ? opt.tol : stage_tol)) {
      if (final_stage) {
        result.converged = true;
      } else {
        eps = std::max(0.1 * eps, eps_floor);
        current = smoothed_objective(residual, g.weight, p, eps);
        result.objective_history.push_back(current);
      }
    }
  }

  result.value_p = smoothed_objective(residual, g.weight, p, 0.0);
  SampledFunction sampled{g.x, g.pinned};
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (g.unknown_of[i] >= 0) sampled.values[i] = u[g.unknown_of[i]];
  }
  result.minimizer = std::move(sampled);
  return result;
}

void require_window(const TraceData& data, const NormParams& params) {
  params.validate();
  if (data.nodes().gaps() < static_cast<std::size_t>(params.r)) {
    throw ValidationError(fmt::format("need at least {} nodes for r = {}", params.r + 1, params.r));
  }
}

}  // namespace

OracleResult oracle_L(const TraceData& data, const NormParams& params, const OracleOptions& options) {
  require_window(data, params);
  OracleMethod method = params.r == 1 ? OracleMethod::exact_linear
                        : params.p == 2.0 ? OracleMethod::exact_natural_spline
                                          : OracleMethod::irls_grid;
  if (options.method) method = *options.method;

  switch (method) {
    case OracleMethod::exact_linear:
      if (params.r != 1) throw ValidationError("exact_linear applies to r = 1 only");
      return OracleResult{.value_p = phi1_energy_p(data, params.p), .minimizer = phi1(data), .method = method};
    case OracleMethod::exact_natural_spline:
      if (params.r != 2 || params.p != 2.0) throw ValidationError("exact_natural_spline applies to r = 2, p = 2 only");
      return OracleResult{
          .value_p = natural_spline_energy(data), .minimizer = natural_cubic_spline(data), .method = method};
    case OracleMethod::irls_grid:
      return irls(data, params.r, params.p, false, options);
  }
  throw ValidationError("unknown oracle method");
}

OracleResult oracle_W(const TraceData& data, const NormParams& params, const OracleOptions& options) {
  require_window(data, params);
  if (params.K && data.nodes().max_step() > *params.K) {
    throw ValidationError(fmt::format("max step {} exceeds bound K = {}", data.nodes().max_step(), *params.K));
  }
  if (options.method && *options.method != OracleMethod::irls_grid) {
    throw ValidationError("the W oracle is only available on the grid");
  }
  return irls(data, params.r, params.p, true, options);
}

}  // namespace sobtrace
