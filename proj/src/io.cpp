#include "sobtrace/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/core.h>

#include "sobtrace/errors.hpp"

namespace sobtrace::io {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t line) {
  const std::string cell = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ValidationError(fmt::format("line {}: '{}' is not a number", line, cell), line);
  }
  return v;
}

struct Columns {
  std::vector<double> lambda;
  std::vector<double> value;
};

Columns read_columns(std::istream& in, bool need_value) {
  std::string line;
  std::size_t line_no = 0;
  std::ptrdiff_t lambda_col = -1;
  std::ptrdiff_t value_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ValidationError("line 1: empty input, expected header", 1);
  const auto header = split(line);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (name == "lambda") lambda_col = static_cast<std::ptrdiff_t>(c);
    if (name == "value") value_col = static_cast<std::ptrdiff_t>(c);
  }
  if (lambda_col < 0) throw ValidationError(fmt::format("line {}: header lacks a 'lambda' column", line_no), line_no);
  if (need_value && value_col < 0) {
    throw ValidationError(fmt::format("line {}: header lacks a 'value' column", line_no), line_no);
  }

  Columns cols;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    const auto needed = static_cast<std::size_t>(std::max(lambda_col, value_col)) + 1;
    if (cells.size() < needed) {
      throw ValidationError(fmt::format("line {}: expected {} cells, got {}", line_no, needed, cells.size()), line_no);
    }
    const double x = parse_cell(cells[static_cast<std::size_t>(lambda_col)], line_no);
    if (!std::isfinite(x)) throw ValidationError(fmt::format("line {}: lambda is not finite", line_no), line_no);
    if (!cols.lambda.empty() && !(cols.lambda.back() < x)) {
      throw ValidationError(fmt::format("line {}: lambda values must be strictly increasing", line_no), line_no);
    }
    cols.lambda.push_back(x);
    if (value_col >= 0) {
      const double v = parse_cell(cells[static_cast<std::size_t>(value_col)], line_no);
      if (!std::isfinite(v)) throw ValidationError(fmt::format("line {}: value is not finite", line_no), line_no);
      cols.value.push_back(v);
    }
  }
  if (cols.lambda.size() < 2) {
    throw ValidationError(fmt::format("line {}: need at least 2 data rows, got {}", line_no, cols.lambda.size()), line_no);
  }
  return cols;
}

}  // namespace

TraceData read_trace_csv(std::istream& in) {
  auto cols = read_columns(in, true);
  return TraceData(NodeSequence(std::move(cols.lambda)), std::move(cols.value));
}

NodeSequence read_nodes_csv(std::istream& in) { return NodeSequence(read_columns(in, false).lambda); }

void write_samples_csv(std::ostream& out, const PiecewisePolynomial& s, std::size_t count) {
  out << "x,value\n";
  for (double x : linspace(s.domain_begin(), s.domain_end(), count)) {
    out << format_number(x) << ',' << format_number(s(x)) << '\n';
  }
}

nlohmann::json to_json(const PiecewisePolynomial& s) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& c : s.pieces()) pieces.push_back({c[0], c[1], c[2], c[3]});
  return {{"breakpoints", std::vector<double>(s.breakpoints().begin(), s.breakpoints().end())}, {"pieces", pieces}};
}

PiecewisePolynomial piecewise_from_json(const nlohmann::json& j) {
  try {
    auto bp = j.at("breakpoints").get<std::vector<double>>();
    std::vector<Coefficients> pieces;
    for (const auto& piece : j.at("pieces")) {
      const auto c = piece.get<std::vector<double>>();
      if (c.size() > 4) throw ValidationError("piece has more than 4 coefficients");
      Coefficients coeffs{};
      std::copy(c.begin(), c.end(), coeffs.begin());
      pieces.push_back(coeffs);
    }
    return PiecewisePolynomial(std::move(bp), std::move(pieces));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed piecewise polynomial JSON: {}", e.what()));
  }
}

}  // namespace sobtrace::io
