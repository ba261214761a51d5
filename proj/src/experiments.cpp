#include "sobtrace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <fmt/core.h>

#include "sobtrace/energy.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/interpolators.hpp"
#include "sobtrace/io.hpp"
#include "sobtrace/oracle.hpp"

namespace sobtrace {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::optional<double> ratio(double num, double den) {
  if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) return std::nullopt;
  return num / den;
}

ValueKind value_kind_from_string(const std::string& s) {
  if (s == "uniform") return ValueKind::uniform;
  if (s == "zero") return ValueKind::zero;
  if (s == "constant") return ValueKind::constant;
  if (s == "polynomial") return ValueKind::polynomial;
  throw ValidationError(fmt::format("unknown value kind '{}'", s));
}

const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::uniform: return "uniform";
    case ValueKind::zero: return "zero";
    case ValueKind::constant: return "constant";
    case ValueKind::polynomial: return "polynomial";
  }
  return "?";
}

}  // namespace

std::vector<double> generate_values(const NodeSequence& nodes, const ValueGenerator& gen, std::uint64_t seed) {
  std::vector<double> v(nodes.size(), 0.0);
  switch (gen.kind) {
    case ValueKind::uniform: {
      std::mt19937_64 rng(splitmix64(seed));
      std::uniform_real_distribution<double> dist(-gen.amplitude, gen.amplitude);
      for (double& x : v) x = dist(rng);
      break;
    }
    case ValueKind::zero:
      break;
    case ValueKind::constant:
      std::fill(v.begin(), v.end(), gen.amplitude);
      break;
    case ValueKind::polynomial:
      for (std::size_t n = 0; n < v.size(); ++n) {
        double acc = 0.0;
        for (auto it = gen.coefficients.rbegin(); it != gen.coefficients.rend(); ++it) acc = acc * nodes[n] + *it;
        v[n] = acc;
      }
      break;
  }
  return v;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  try {
    SweepConfig c;
    for (const auto& g : j.at("generators")) {
      NodeGenerator gen;
      gen.kind = node_kind_from_string(g.at("kind").get<std::string>());
      gen.start = g.value("start", gen.start);
      gen.step = g.value("step", gen.step);
      gen.ratio = g.value("ratio", gen.ratio);
      gen.lo = g.value("lo", gen.lo);
      gen.hi = g.value("hi", gen.hi);
      gen.h = g.value("h", gen.h);
      gen.count = g.value("count", gen.count);
      gen.m = g.value("m", gen.m);
      c.generators.push_back(gen);
    }
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& e : j.at("cases")) c.exponents.emplace_back(e.at("r").get<int>(), e.at("p").get<double>());
    if (j.contains("values")) {
      const auto& v = j.at("values");
      c.values.kind = value_kind_from_string(v.value("kind", std::string("uniform")));
      c.values.amplitude = v.value("amplitude", 1.0);
      c.values.coefficients = v.value("coefficients", std::vector<double>{});
    }
    c.grid_per_gap = j.value("grid_per_gap", c.grid_per_gap);
    c.tol = j.value("tol", c.tol);
    if (c.generators.empty() || c.seeds.empty() || c.exponents.empty()) {
      throw ValidationError("sweep config needs generators, seeds and cases");
    }
    for (const auto& [r, p] : c.exponents) NormParams{r, p, std::nullopt}.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed sweep config: {}", e.what()));
  }
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators) {
    gens.push_back({{"kind", sobtrace::to_string(g.kind)}, {"start", g.start}, {"step", g.step}, {"ratio", g.ratio},
                    {"lo", g.lo}, {"hi", g.hi}, {"h", g.h}, {"count", g.count}, {"m", g.m}});
  }
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& [r, p] : exponents) cases.push_back({{"r", r}, {"p", p}});
  return {{"generators", gens},
          {"seeds", seeds},
          {"cases", cases},
          {"values",
           {{"kind", to_string(values.kind)}, {"amplitude", values.amplitude}, {"coefficients", values.coefficients}}},
          {"grid_per_gap", grid_per_gap},
          {"tol", tol}};
}

namespace {

CaseRecord run_case(const NodeSequence& nodes, const std::vector<double>& values, int r, double p,
                    const SweepConfig& config) {
  CaseRecord rec;
  rec.N = nodes.gaps();
  rec.r = r;
  rec.p = p;
  rec.K = nodes.max_step();
  rec.nodes.assign(nodes.values().begin(), nodes.values().end());
  rec.values = values;
  const TraceData data(nodes, values);
  const NormParams params{r, p, std::nullopt};
  const OracleOptions options{.grid_per_gap = config.grid_per_gap, .tol = config.tol};

  rec.eq_L_p = eq_norm_L_p(data, params);
  rec.eq_W_p = eq_norm_W_p(data, params);
  if (r == 2) rec.simp_W_p = simp_norm_W_p(data, p);
  const auto phi = r == 1 ? phi1(data) : phi2(data);
  rec.phi_energy_p = r == 1 ? phi1_energy_p(data, p) : phi2_energy_p(data, p);
  rec.phi_w_energy_p = w_norm_p(phi, r, p);

  const auto L = oracle_L(data, params, options);
  const auto W = oracle_W(data, params, options);
  rec.oracle_L_p = L.value_p;
  rec.oracle_L_method = to_string(L.method);
  rec.oracle_W_p = W.value_p;
  rec.converged = L.converged && W.converged;

  rec.ratio_oracle_L_eq_L = ratio(rec.oracle_L_p, rec.eq_L_p);
  rec.ratio_phi_oracle_L = ratio(rec.phi_energy_p, rec.oracle_L_p);
  rec.ratio_oracle_W_eq_W = ratio(rec.oracle_W_p, rec.eq_W_p);
  if (rec.simp_W_p) rec.ratio_eq_W_simp_W = ratio(rec.eq_W_p, *rec.simp_W_p);
  rec.ratio_phi_W_oracle_W = ratio(rec.phi_w_energy_p, rec.oracle_W_p);
  return rec;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
  SweepReport report{config, {}};
  for (const auto& gen : config.generators) {
    for (const auto seed : config.seeds) {
      const NodeSequence nodes = generate_nodes(gen, seed);
      const auto values = generate_values(nodes, config.values, seed);
      for (const auto& [r, p] : config.exponents) {
        CaseRecord rec;
        try {
          rec = run_case(nodes, values, r, p, config);
        } catch (const std::exception& e) {
          rec.N = nodes.gaps();
          rec.r = r;
          rec.p = p;
          rec.converged = false;
          rec.error = e.what();
        }
        rec.index = report.cases.size();
        rec.kind = to_string(gen.kind);
        rec.seed = seed;
        report.cases.push_back(std::move(rec));
      }
    }
  }
  return report;
}

namespace {

using RatioField = std::optional<double> CaseRecord::*;

const std::vector<std::pair<std::string, RatioField>>& ratio_fields() {
  static const std::vector<std::pair<std::string, RatioField>> fields{
      {"oracle_L/eq_L", &CaseRecord::ratio_oracle_L_eq_L},
      {"phi/oracle_L", &CaseRecord::ratio_phi_oracle_L},
      {"oracle_W/eq_W", &CaseRecord::ratio_oracle_W_eq_W},
      {"eq_W/simp_W", &CaseRecord::ratio_eq_W_simp_W},
      {"phi_W/oracle_W", &CaseRecord::ratio_phi_W_oracle_W},
  };
  return fields;
}

std::string cell(const std::optional<double>& v) { return v ? io::format_number(*v) : "undefined"; }

}  // namespace

std::map<std::string, RatioStats> SweepReport::aggregate() const {
  std::map<std::string, RatioStats> out;
  for (const auto& [name, field] : ratio_fields()) {
    RatioStats stats;
    double sum = 0.0;
    for (const auto& c : cases) {
      const auto& v = c.*field;
      if (!v) continue;
      ++stats.defined;
      sum += *v;
      stats.min = stats.min ? std::min(*stats.min, *v) : *v;
      stats.max = stats.max ? std::max(*stats.max, *v) : *v;
    }
    if (stats.defined > 0) stats.mean = sum / static_cast<double>(stats.defined);
    out[name] = stats;
  }
  return out;
}

void SweepReport::write_csv(std::ostream& out) const {
  out << "index,kind,N,seed,r,p,K,eq_L_p,eq_W_p,simp_W_p,phi_energy_p,phi_w_energy_p,oracle_L_p,oracle_W_p,"
         "oracle_L_method,converged";
  for (const auto& [name, field] : ratio_fields()) out << ",ratio " << name;
  out << '\n';
  for (const auto& c : cases) {
    out << c.index << ',' << c.kind << ',' << c.N << ',' << c.seed << ',' << c.r << ',' << io::format_number(c.p) << ','
        << io::format_number(c.K) << ',' << io::format_number(c.eq_L_p) << ',' << io::format_number(c.eq_W_p) << ','
        << cell(c.simp_W_p) << ',' << io::format_number(c.phi_energy_p) << ',' << io::format_number(c.phi_w_energy_p)
        << ',' << io::format_number(c.oracle_L_p) << ',' << io::format_number(c.oracle_W_p) << ','
        << (c.oracle_L_method.empty() ? "none" : c.oracle_L_method) << ',' << (c.converged ? "true" : "false");
    for (const auto& [name, field] : ratio_fields()) out << ',' << cell(c.*field);
    out << '\n';
  }
}

nlohmann::json SweepReport::aggregate_json() const {
  nlohmann::json ratios = nlohmann::json::object();
  for (const auto& [name, stats] : aggregate()) {
    auto opt = [](const std::optional<double>& v) -> nlohmann::json {
      return v ? nlohmann::json(*v) : nlohmann::json("undefined");
    };
    ratios[name] = {{"defined", stats.defined}, {"min", opt(stats.min)}, {"max", opt(stats.max)}, {"mean", opt(stats.mean)}};
  }
  std::size_t flagged = 0;
  for (const auto& c : cases) flagged += c.converged ? 0 : 1;
  return {{"cases", cases.size()}, {"flagged", flagged}, {"ratios", ratios}, {"config", config.to_json()}};
}

CounterexampleRecord counterexample_scenario(double h, std::size_t m, double p, int grid_per_gap, double amplitude) {
  if (!(h > 0.0 && h <= 1.0)) throw ValidationError(fmt::format("h must lie in (0, 1], got {}", h));
  if (m < 2) throw ValidationError(fmt::format("m must be >= 2, got {}", m));
  check_exponent(p);
  NodeGenerator gen;
  gen.kind = NodeKind::clustering;
  gen.h = h;
  gen.m = m;
  const NodeSequence nodes = generate_nodes(gen, 0);
  std::vector<double> values(nodes.size());
  const double top = (1.0 + h) * (1.0 + h);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    values[n] = amplitude * (top - nodes[n] * nodes[n]) / (h * (2.0 + h));
  }
  const TraceData data(nodes, std::move(values));

  CounterexampleRecord rec{.h = h, .m = m, .p = p};
  rec.rhs_p = simp_norm_W_p(data, p);
  const auto W = oracle_W(data, NormParams{2, p, std::nullopt}, OracleOptions{.grid_per_gap = grid_per_gap});
  rec.lhs_p = W.value_p;
  rec.converged = W.converged;
  rec.ratio = ratio(rec.lhs_p, rec.rhs_p);
  return rec;
}

LargeIntervalRecord large_interval_check(double K, const TraceData& data, double p, int grid_per_gap) {
  const auto& nodes = data.nodes();
  if (!(K > 0.0)) throw ValidationError("K must be > 0");
  if (nodes.max_step() > K) {
    throw ValidationError(fmt::format("max step {} exceeds K = {}", nodes.max_step(), K));
  }
  if (nodes.length() < 10.0 * K) {
    throw ValidationError(fmt::format("window length {} is shorter than 10 K = {}", nodes.length(), 10.0 * K));
  }
  LargeIntervalRecord rec;
  rec.simp_W_p = simp_norm_W_p(data, p);
  const auto W = oracle_W(data, NormParams{2, p, K}, OracleOptions{.grid_per_gap = grid_per_gap});
  rec.oracle_W_p = W.value_p;
  rec.converged = W.converged;
  rec.ratio = ratio(rec.oracle_W_p, rec.simp_W_p);
  return rec;
}

LargeIntervalSummary large_interval_sweep(double K, double p, std::size_t cases, std::uint64_t seed,
                                          int grid_per_gap) {
  LargeIntervalSummary summary;
  bool first = true;
  for (std::size_t k = 0; k < cases; ++k) {
    const std::uint64_t s = splitmix64(seed + k);
    NodeGenerator gen;
    gen.kind = NodeKind::random_gaps;
    gen.lo = 0.5 * K;
    gen.hi = K;
    gen.count = 21 + k % 10;  // >= 20 gaps of length >= K/2
    const NodeSequence nodes = generate_nodes(gen, s);
    const auto values = generate_values(nodes, ValueGenerator{}, s);
    auto rec = large_interval_check(K, TraceData(nodes, values), p, grid_per_gap);
    if (rec.ratio) {
      summary.min_ratio = first ? *rec.ratio : std::min(summary.min_ratio, *rec.ratio);
      summary.max_ratio = first ? *rec.ratio : std::max(summary.max_ratio, *rec.ratio);
      first = false;
    }
    summary.records.push_back(rec);
  }
  return summary;
}

}  // namespace sobtrace
