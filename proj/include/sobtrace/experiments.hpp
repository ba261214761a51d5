#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sobtrace/grid.hpp"
#include "sobtrace/norms.hpp"

namespace sobtrace {

enum class ValueKind { uniform, zero, constant, polynomial };

/// How data values are drawn for a node sequence.
///   uniform:    i.i.d. in [-amplitude, amplitude]
///   constant:   amplitude everywhere
///   polynomial: sum_k coefficients[k] x^k
struct ValueGenerator {
  ValueKind kind = ValueKind::uniform;
  double amplitude = 1.0;
  std::vector<double> coefficients;
};

std::vector<double> generate_values(const NodeSequence& nodes, const ValueGenerator& gen, std::uint64_t seed);

struct SweepConfig {
  std::vector<NodeGenerator> generators;
  std::vector<std::uint64_t> seeds;
  /// (r, p) pairs.
  std::vector<std::pair<int, double>> exponents;
  ValueGenerator values;
  int grid_per_gap = 32;
  double tol = 1e-10;

  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// One (nodes, values, r, p) case. Ratios are empty when undefined
/// (zero denominator, or a norm that does not apply).
struct CaseRecord {
  std::size_t index = 0;
  std::string kind;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  int r = 1;
  double p = 2.0;
  double K = 0.0;  // max step of the window
  double eq_L_p = 0.0;
  double eq_W_p = 0.0;
  std::optional<double> simp_W_p;  // r = 2 only
  double phi_energy_p = 0.0;       // int |(Phi_r f)^{(r)}|^p
  double phi_w_energy_p = 0.0;     // W-norm of Phi_r f
  double oracle_L_p = 0.0;
  double oracle_W_p = 0.0;
  std::string oracle_L_method;
  bool converged = true;
  std::string error;

  std::optional<double> ratio_oracle_L_eq_L;
  std::optional<double> ratio_phi_oracle_L;
  std::optional<double> ratio_oracle_W_eq_W;
  std::optional<double> ratio_eq_W_simp_W;
  std::optional<double> ratio_phi_W_oracle_W;

  /// Node and value data the case was built from.
  std::vector<double> nodes;
  std::vector<double> values;
};

struct RatioStats {
  std::size_t defined = 0;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<double> mean;
};

struct SweepReport {
  SweepConfig config;
  std::vector<CaseRecord> cases;

  std::map<std::string, RatioStats> aggregate() const;
  /// One row per case; undefined ratios print as "undefined".
  void write_csv(std::ostream& out) const;
  nlohmann::json aggregate_json() const;
};

/// Cases are enumerated generator-major, then seed, then (r, p).
SweepReport run_sweep(const SweepConfig& config);

struct CounterexampleRecord {
  double h = 0.0;
  std::size_t m = 0;
  double p = 2.0;
  double lhs_p = 0.0;  // W-oracle value
  double rhs_p = 0.0;  // simplified W sum
  std::optional<double> ratio;
  bool converged = true;
};

/// Clustering window around [-1-h, 1+h] with data sampled from
/// amplitude * ((1+h)^2 - x^2) / (h (2+h)), at r = 2.
CounterexampleRecord counterexample_scenario(double h, std::size_t m, double p, int grid_per_gap,
                                             double amplitude = 1.0);

struct LargeIntervalRecord {
  double oracle_W_p = 0.0;
  double simp_W_p = 0.0;
  std::optional<double> ratio;
  bool converged = true;
};

/// r = 2 comparison of the W-oracle with the simplified W sum on a window of
/// length >= 10 K with steps <= K.
LargeIntervalRecord large_interval_check(double K, const TraceData& data, double p, int grid_per_gap = 32);

struct LargeIntervalSummary {
  std::vector<LargeIntervalRecord> records;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Seeded random corpus: random_gaps steps in [K/2, K], length >= 10 K, uniform values.
LargeIntervalSummary large_interval_sweep(double K, double p, std::size_t cases, std::uint64_t seed,
                                          int grid_per_gap = 32);

}  // namespace sobtrace
