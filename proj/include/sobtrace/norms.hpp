#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sobtrace/grid.hpp"

namespace sobtrace {

/// Derivative order r in {1, 2}, exponent 1 <= p < inf, optional step bound K.
struct NormParams {
  int r = 1;
  double p = 2.0;
  std::optional<double> K;

  void validate() const;
};

/// Throws ValidationError unless 1 <= p < inf.
void check_exponent(double p);

/// Node sequence together with the sampled values f(lambda_n).
class TraceData {
 public:
  TraceData(NodeSequence nodes, std::vector<double> values);

  const NodeSequence& nodes() const { return nodes_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t n) const { return values_[n]; }
  std::size_t size() const { return values_.size(); }
  /// max |f(lambda_n)|, used as a scale in relative comparisons.
  double scale() const;

  TraceData scaled(double t) const;

 private:
  NodeSequence nodes_;
  std::vector<double> values_;
};

// Each norm comes in two flavours: `*_p` returns the p-th power (the raw sum),
// the plain name returns its 1/p-th root. Sums run over all complete stencils
// n = 0..N-r of the window.

double eq_norm_L_p(const TraceData& data, const NormParams& params);
double eq_norm_L(const TraceData& data, const NormParams& params);

/// eq_norm_L_p plus sum_{j<r} sum_n (lambda_{n+r}-lambda_n)^{jp+1} |f(lambda_n..lambda_{n+j})|^p.
/// If params.K is set, every step must be <= K.
double eq_norm_W_p(const TraceData& data, const NormParams& params);
double eq_norm_W(const TraceData& data, const NormParams& params);

/// r = 2 only: eq_norm_L_p plus sum_n (lambda_{n+1}-lambda_{n-1}) |f(lambda_n)|^p,
/// where the edge weights are the reflected widths 2 h_0 and 2 h_{N-1}.
double simp_norm_W_p(const TraceData& data, double p);
double simp_norm_W(const TraceData& data, double p);

/// simp_norm_W_p without the two edge value terms (interior stencils n = 1..N-1).
double simp_norm_W_interior_p(const TraceData& data, double p);

}  // namespace sobtrace
