#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sobtrace/grid.hpp"

namespace sobtrace {

/// Triangular table of divided differences: at(k, n) = f(lambda_n, ..., lambda_{n+k}).
/// Row k holds N+1-k entries.
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(std::vector<std::vector<double>> entries) : entries_(std::move(entries)) {}

  std::size_t order() const { return entries_.size() - 1; }
  double at(std::size_t k, std::size_t n) const { return entries_[k][n]; }
  std::span<const double> row(std::size_t k) const { return entries_[k]; }

 private:
  std::vector<std::vector<double>> entries_;
};

/// Forward triangular recursion up to `max_order` (0 <= max_order <= N).
DividedDifferenceTable divided_differences(const NodeSequence& nodes, std::span<const double> values,
                                           std::size_t max_order);

/// Single divided difference f(x_0, ..., x_k) over arbitrary distinct abscissae.
double divided_difference(std::span<const double> x, std::span<const double> f);

}  // namespace sobtrace
