#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sobtrace/grid.hpp"
#include "sobtrace/norms.hpp"
#include "sobtrace/pwpoly.hpp"

namespace sobtrace::io {

/// Round-trip safe, 17 significant digits.
std::string format_number(double v);

/// CSV with header `lambda,value`, one node per row in ascending order.
/// Errors are ValidationError whose message starts with "line <k>:".
TraceData read_trace_csv(std::istream& in);
/// CSV with a `lambda` column (other columns ignored).
NodeSequence read_nodes_csv(std::istream& in);

/// `count` equally spaced samples over the domain, header `x,value`.
void write_samples_csv(std::ostream& out, const PiecewisePolynomial& s, std::size_t count);

/// {"breakpoints": [...], "pieces": [[c0, c1, c2, c3], ...]}, local coordinates.
nlohmann::json to_json(const PiecewisePolynomial& s);
PiecewisePolynomial piecewise_from_json(const nlohmann::json& j);

}  // namespace sobtrace::io
