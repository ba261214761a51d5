#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sobtrace {

/// Strictly increasing, finite sequence of interpolation nodes
/// lambda_0 < ... < lambda_N (N >= 1). Immutable once built.
class NodeSequence {
 public:
  /// Validates and takes ownership of `values`. Throws ValidationError
  /// naming the first offending index.
  explicit NodeSequence(std::vector<double> values);

  std::size_t size() const { return nodes_.size(); }
  /// Number of gaps, i.e. N.
  std::size_t gaps() const { return nodes_.size() - 1; }

  double operator[](std::size_t n) const { return nodes_[n]; }
  std::span<const double> values() const { return nodes_; }

  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  double length() const { return back() - front(); }

  /// h_n = lambda_{n+1} - lambda_n.
  double step(std::size_t n) const { return nodes_[n + 1] - nodes_[n]; }
  /// mu_n = (lambda_n + lambda_{n+1}) / 2.
  double midpoint(std::size_t n) const { return 0.5 * (nodes_[n] + nodes_[n + 1]); }
  double max_step() const;
  double min_step() const;

  friend bool operator==(const NodeSequence&, const NodeSequence&) = default;

 private:
  std::vector<double> nodes_;
};

NodeSequence make_nodes(std::vector<double> values);

enum class NodeKind { uniform, geometric, random_gaps, clustering };

/// Parameters for generate_nodes. Only the fields relevant to `kind` are read:
///   uniform:     start, step, count
///   geometric:   start, step (first gap), ratio, count
///   random_gaps: start, lo, hi, count
///   clustering:  h, m
struct NodeGenerator {
  NodeKind kind = NodeKind::uniform;
  double start = 0.0;
  double step = 1.0;
  double ratio = 1.0;
  double lo = 0.5;
  double hi = 1.5;
  double h = 0.5;
  std::size_t count = 2;
  std::size_t m = 2;
};

/// Deterministic for a fixed seed. The clustering kind places -1 and 1 and
/// m nodes on each side accumulating geometrically toward 1+h and -1-h.
NodeSequence generate_nodes(const NodeGenerator& gen, std::uint64_t seed);

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& name);

}  // namespace sobtrace
