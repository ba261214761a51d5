#include "sobtrace/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "sobtrace/errors.hpp"
#include "sobtrace/experiments.hpp"
#include "sobtrace/interpolators.hpp"
#include "sobtrace/io.hpp"
#include "sobtrace/oracle.hpp"

namespace sobtrace::cli {

namespace {

using io::format_number;
using nlohmann::json;

TraceData load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read '{}'", path));
  return io::read_trace_csv(in);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError(fmt::format("cannot write '{}'", path));
  return out;
}

/// Prints JSON numbers with the same 17-digit formatting as the CSV output.
std::string dump(const json& j) {
  if (j.is_number_float()) return format_number(j.get<double>());
  if (j.is_object()) {
    std::string s = "{";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) s += ", ";
      first = false;
      s += json(key).dump() + ": " + dump(value);
    }
    return s + "}";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + dump(j[k]);
    return s + "]";
  }
  return j.dump();
}

struct NormCmd {
  std::string which = "eq-l";
  std::optional<int> r;
  double p = 2.0;
  std::optional<double> K;
  std::string format = "csv";
  std::string input;

  int run(std::ostream& out) const {
    const TraceData data = load_trace(input);
    double power = 0.0;
    int order = r.value_or(which == "simp-w" ? 2 : 1);
    if (which == "eq-l") {
      power = eq_norm_L_p(data, NormParams{order, p, K});
    } else if (which == "eq-w") {
      power = eq_norm_W_p(data, NormParams{order, p, K});
    } else {
      if (order != 2) throw ValidationError("simp-w is defined for r = 2 only");
      NormParams{order, p, K}.validate();
      if (K && data.nodes().max_step() > *K) throw ValidationError("max step exceeds K");
      power = simp_norm_W_p(data, p);
    }
    const double norm = std::pow(power, 1.0 / p);
    if (format == "json") {
      out << dump(json{{"which", which}, {"r", order}, {"p", p}, {"norm", norm}, {"power", power}}) << '\n';
    } else {
      out << "which,r,p,norm,power\n"
          << which << ',' << order << ',' << format_number(p) << ',' << format_number(norm) << ','
          << format_number(power) << '\n';
    }
    return ok;
  }
};

struct InterpCmd {
  std::string method = "phi2";
  std::size_t samples = 101;
  std::string output;
  std::string pieces;
  std::string input;

  int run(std::ostream& out) const {
    const TraceData data = load_trace(input);
    const auto s = method == "phi1" ? phi1(data) : phi2(data);
    if (output.empty()) {
      io::write_samples_csv(out, s, samples);
    } else {
      auto f = open_output(output);
      io::write_samples_csv(f, s, samples);
    }
    std::string pieces_path = pieces;
    if (pieces_path.empty() && !output.empty()) {
      pieces_path = std::filesystem::path(output).replace_extension(".json").string();
    }
    if (!pieces_path.empty()) {
      json j = io::to_json(s);
      j["method"] = method;
      auto f = open_output(pieces_path);
      f << dump(j) << '\n';
    }
    return ok;
  }
};

json minimizer_json(const OracleResult& res) {
  if (const auto* s = std::get_if<PiecewisePolynomial>(&res.minimizer)) {
    json j = io::to_json(*s);
    j["type"] = "piecewise_polynomial";
    return j;
  }
  const auto& g = std::get<SampledFunction>(res.minimizer);
  return {{"type", "samples"}, {"x", g.x}, {"values", g.values}};
}

struct OracleCmd {
  int r = 2;
  double p = 2.0;
  int grid = 64;
  double tol = 1e-10;
  int max_iterations = 2000;
  std::string which = "L";
  std::string method;
  bool with_minimizer = false;
  std::string input;

  int run(std::ostream& out) const {
    const TraceData data = load_trace(input);
    OracleOptions opt{.grid_per_gap = grid, .tol = tol, .max_iterations = max_iterations};
    if (method == "irls_grid") opt.method = OracleMethod::irls_grid;
    if (method == "exact_linear") opt.method = OracleMethod::exact_linear;
    if (method == "exact_natural_spline") opt.method = OracleMethod::exact_natural_spline;
    const NormParams params{r, p, std::nullopt};
    const auto res = which == "W" ? oracle_W(data, params, opt) : oracle_L(data, params, opt);
    json j{{"which", which},
           {"r", r},
           {"p", p},
           {"method", to_string(res.method)},
           {"value_p", res.value_p},
           {"value", std::pow(res.value_p, 1.0 / p)},
           {"iterations", res.iterations},
           {"residual", res.residual},
           {"converged", res.converged},
           {"grid_per_gap", res.grid_per_gap}};
    if (with_minimizer) j["minimizer"] = minimizer_json(res);
    out << dump(j) << '\n';
    return res.converged ? ok : not_converged;
  }
};

struct SweepCmd {
  std::string config;
  std::string output;
  std::string aggregate;

  int run(std::ostream& out) const {
    std::ifstream in(config);
    if (!in) throw ValidationError(fmt::format("cannot read '{}'", config));
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError(fmt::format("'{}' is not valid JSON: {}", config, e.what()));
    }
    const auto report = run_sweep(SweepConfig::from_json(j));
    if (output.empty()) {
      report.write_csv(out);
    } else {
      auto f = open_output(output);
      report.write_csv(f);
    }
    if (!aggregate.empty()) {
      auto f = open_output(aggregate);
      f << dump(report.aggregate_json()) << '\n';
    }
    for (const auto& c : report.cases) {
      if (!c.converged) return not_converged;
    }
    return ok;
  }
};

struct CounterexampleCmd {
  double h = 0.5;
  double p = 2.0;
  std::size_t m = 8;
  int grid = 32;
  std::string format = "csv";

  int run(std::ostream& out) const {
    const auto rec = counterexample_scenario(h, m, p, grid);
    if (format == "json") {
      out << dump(json{{"h", h},
                       {"m", m},
                       {"p", p},
                       {"lhs_p", rec.lhs_p},
                       {"rhs_p", rec.rhs_p},
                       {"ratio", rec.ratio ? json(*rec.ratio) : json("undefined")},
                       {"converged", rec.converged}})
          << '\n';
    } else {
      out << "h,m,p,lhs_p,rhs_p,ratio\n"
          << format_number(h) << ',' << m << ',' << format_number(p) << ',' << format_number(rec.lhs_p) << ','
          << format_number(rec.rhs_p) << ',' << (rec.ratio ? format_number(*rec.ratio) : "undefined") << '\n';
    }
    return rec.converged ? ok : not_converged;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit Sobolev trace norms and quasi-optimal spline interpolators", "sobtrace"};
  app.require_subcommand(1);

  NormCmd norm;
  auto* norm_app = app.add_subcommand("norm", "Evaluate an explicit trace (semi)norm");
  norm_app->add_option("--which", norm.which)->check(CLI::IsMember({"eq-l", "eq-w", "simp-w"}));
  norm_app->add_option("--r", norm.r)->check(CLI::Range(1, 2));
  norm_app->add_option("--p", norm.p)->check(CLI::Range(1.0, 1e300));
  norm_app->add_option("--K", norm.K);
  norm_app->add_option("--format", norm.format)->check(CLI::IsMember({"csv", "json"}));
  norm_app->add_option("data", norm.input, "CSV with header lambda,value")->required();

  InterpCmd interp;
  auto* interp_app = app.add_subcommand("interp", "Build an interpolating spline and sample it");
  interp_app->add_option("--method", interp.method)->check(CLI::IsMember({"phi1", "phi2"}));
  interp_app->add_option("--samples", interp.samples)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  interp_app->add_option("-o,--output", interp.output, "Sample CSV (stdout if omitted)");
  interp_app->add_option("--pieces", interp.pieces, "Piece-coefficient JSON");
  interp_app->add_option("data", interp.input)->required();

  OracleCmd oracle;
  auto* oracle_app = app.add_subcommand("oracle", "Minimize over all interpolating extensions");
  oracle_app->add_option("--r", oracle.r)->check(CLI::Range(1, 2));
  oracle_app->add_option("--p", oracle.p)->check(CLI::Range(1.0, 1e300));
  oracle_app->add_option("--grid", oracle.grid)->check(CLI::Range(8, 1 << 20));
  oracle_app->add_option("--tol", oracle.tol)->check(CLI::PositiveNumber);
  oracle_app->add_option("--max-iterations", oracle.max_iterations)->check(CLI::Range(1, 1 << 30));
  oracle_app->add_option("--which", oracle.which)->check(CLI::IsMember({"L", "W"}));
  oracle_app->add_option("--method", oracle.method)
      ->check(CLI::IsMember({"exact_linear", "exact_natural_spline", "irls_grid"}));
  oracle_app->add_flag("--minimizer", oracle.with_minimizer, "Include the minimizer in the output");
  oracle_app->add_option("data", oracle.input)->required();

  SweepCmd sweep;
  auto* sweep_app = app.add_subcommand("sweep", "Run a seeded sweep");
  sweep_app->add_option("config", sweep.config, "Sweep configuration JSON")->required();
  sweep_app->add_option("-o,--output", sweep.output, "Per-case CSV (stdout if omitted)");
  sweep_app->add_option("--aggregate", sweep.aggregate, "Aggregate JSON");

  CounterexampleCmd counter;
  auto* counter_app = app.add_subcommand("counterexample", "Clustering-window scenario at r = 2");
  counter_app->set_help_flag("--help", "Print this help message and exit");
  counter_app->add_option("--h", counter.h);
  counter_app->add_option("--p", counter.p)->check(CLI::Range(1.0, 1e300));
  counter_app->add_option("--m", counter.m);
  counter_app->add_option("--grid", counter.grid)->check(CLI::Range(8, 1 << 20));
  counter_app->add_option("--format", counter.format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  }

  try {
    if (norm_app->parsed()) return norm.run(out);
    if (interp_app->parsed()) return interp.run(out);
    if (oracle_app->parsed()) return oracle.run(out);
    if (sweep_app->parsed()) return sweep.run(out);
    if (counter_app->parsed()) return counter.run(out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return not_converged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
  return failure;
}

}  // namespace sobtrace::cli
