#include "sobtrace/norms.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "sobtrace/divdiff.hpp"
#include "sobtrace/errors.hpp"

namespace sobtrace {

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ValidationError(fmt::format("exponent p must satisfy 1 <= p < inf, got {}", p));
  }
}

void NormParams::validate() const {
  if (r != 1 && r != 2) throw ValidationError(fmt::format("derivative order r must be 1 or 2, got {}", r));
  check_exponent(p);
  if (K && !(*K > 0.0 && std::isfinite(*K))) throw ValidationError(fmt::format("step bound K must be > 0, got {}", *K));
}

TraceData::TraceData(NodeSequence nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (values_.size() != nodes_.size()) {
    throw ValidationError(fmt::format("{} values for {} nodes", values_.size(), nodes_.size()));
  }
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!std::isfinite(values_[n])) throw ValidationError(fmt::format("value {} is not finite", n), n);
  }
}

double TraceData::scale() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

TraceData TraceData::scaled(double t) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= t;
  return TraceData(nodes_, std::move(v));
}

namespace {

void require_stencil(const TraceData& data, std::size_t width) {
  if (data.nodes().gaps() < width) {
    throw ValidationError(fmt::format("need at least {} nodes, got {}", width + 1, data.size()));
  }
}

double root(double power, double p) { return std::pow(power, 1.0 / p); }

}  // namespace

double eq_norm_L_p(const TraceData& data, const NormParams& params) {
  params.validate();
  const auto r = static_cast<std::size_t>(params.r);
  require_stencil(data, r);
  const auto& x = data.nodes();
  const auto table = divided_differences(x, data.values(), r);
  double sum = 0.0;
  for (std::size_t n = 0; n + r <= x.gaps(); ++n) {
    sum += (x[n + r] - x[n]) * std::pow(std::abs(table.at(r, n)), params.p);
  }
  return sum;
}

double eq_norm_L(const TraceData& data, const NormParams& params) {
  return root(eq_norm_L_p(data, params), params.p);
}

double eq_norm_W_p(const TraceData& data, const NormParams& params) {
  params.validate();
  const auto r = static_cast<std::size_t>(params.r);
  require_stencil(data, r);
  const auto& x = data.nodes();
  if (params.K && x.max_step() > *params.K) {
    throw ValidationError(fmt::format("max step {} exceeds bound K = {}", x.max_step(), *params.K));
  }
  const auto table = divided_differences(x, data.values(), r);
  double sum = eq_norm_L_p(data, params);
  for (std::size_t j = 0; j < r; ++j) {
    const double exponent = static_cast<double>(j) * params.p + 1.0;
    for (std::size_t n = 0; n + r <= x.gaps(); ++n) {
      sum += std::pow(x[n + r] - x[n], exponent) * std::pow(std::abs(table.at(j, n)), params.p);
    }
  }
  return sum;
}

double eq_norm_W(const TraceData& data, const NormParams& params) {
  return root(eq_norm_W_p(data, params), params.p);
}

double simp_norm_W_interior_p(const TraceData& data, double p) {
  check_exponent(p);
  require_stencil(data, 2);
  const auto& x = data.nodes();
  double sum = eq_norm_L_p(data, NormParams{2, p, std::nullopt});
  for (std::size_t n = 1; n < x.gaps(); ++n) {
    sum += (x[n + 1] - x[n - 1]) * std::pow(std::abs(data.value(n)), p);
  }
  return sum;
}

double simp_norm_W_p(const TraceData& data, double p) {
  const auto& x = data.nodes();
  const std::size_t N = x.gaps();
  double sum = simp_norm_W_interior_p(data, p);
  sum += 2.0 * x.step(0) * std::pow(std::abs(data.value(0)), p);
  sum += 2.0 * x.step(N - 1) * std::pow(std::abs(data.value(N)), p);
  return sum;
}

double simp_norm_W(const TraceData& data, double p) { return root(simp_norm_W_p(data, p), p); }

}  // namespace sobtrace
