#include "sobtrace/divdiff.hpp"

#include <fmt/core.h>

#include "sobtrace/errors.hpp"

namespace sobtrace {

DividedDifferenceTable divided_differences(const NodeSequence& nodes, std::span<const double> values,
                                           std::size_t max_order) {
  if (values.size() != nodes.size()) {
    throw ValidationError(fmt::format("{} values for {} nodes", values.size(), nodes.size()));
  }
  if (max_order > nodes.gaps()) {
    throw ValidationError(fmt::format("order {} needs more than {} nodes", max_order, nodes.size()));
  }
  std::vector<std::vector<double>> table;
  table.reserve(max_order + 1);
  table.emplace_back(values.begin(), values.end());
  for (std::size_t k = 1; k <= max_order; ++k) {
    const auto& prev = table.back();
    std::vector<double> row(nodes.size() - k);
    for (std::size_t n = 0; n < row.size(); ++n) {
      row[n] = (prev[n + 1] - prev[n]) / (nodes[n + k] - nodes[n]);
    }
    table.push_back(std::move(row));
  }
  return DividedDifferenceTable(std::move(table));
}

double divided_difference(std::span<const double> x, std::span<const double> f) {
  if (x.size() != f.size() || x.empty()) {
    throw ValidationError("divided_difference needs matching, non-empty abscissae and values");
  }
  std::vector<double> work(f.begin(), f.end());
  for (std::size_t k = 1; k < x.size(); ++k) {
    for (std::size_t n = 0; n + k < x.size(); ++n) {
      const double dx = x[n + k] - x[n];
      if (dx == 0.0) throw ValidationError("divided_difference needs distinct abscissae", n + k);
      work[n] = (work[n + 1] - work[n]) / dx;
    }
  }
  return work[0];
}

}  // namespace sobtrace
