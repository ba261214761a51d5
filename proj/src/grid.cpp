#include "sobtrace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/core.h>

#include "sobtrace/errors.hpp"

namespace sobtrace {

NodeSequence::NodeSequence(std::vector<double> values) : nodes_(std::move(values)) {
  if (nodes_.size() < 2) {
    throw ValidationError(fmt::format("need at least 2 nodes, got {}", nodes_.size()));
  }
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!std::isfinite(nodes_[n])) {
      throw ValidationError(fmt::format("node {} is not finite", n), n);
    }
    if (n > 0 && !(nodes_[n - 1] < nodes_[n])) {
      throw ValidationError(
          fmt::format("nodes not strictly increasing at index {} ({} >= {})", n, nodes_[n - 1], nodes_[n]), n);
    }
  }
}

double NodeSequence::max_step() const {
  double k = 0.0;
  for (std::size_t n = 0; n < gaps(); ++n) k = std::max(k, step(n));
  return k;
}

double NodeSequence::min_step() const {
  double k = step(0);
  for (std::size_t n = 1; n < gaps(); ++n) k = std::min(k, step(n));
  return k;
}

NodeSequence make_nodes(std::vector<double> values) { return NodeSequence(std::move(values)); }

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(fmt::format("invalid generator parameters: {}", what));
}

}  // namespace

NodeSequence generate_nodes(const NodeGenerator& gen, std::uint64_t seed) {
  std::vector<double> nodes;
  switch (gen.kind) {
    case NodeKind::uniform: {
      require(gen.count >= 2, "count >= 2");
      require(gen.step > 0.0 && std::isfinite(gen.step), "step > 0");
      nodes.reserve(gen.count);
      for (std::size_t k = 0; k < gen.count; ++k) nodes.push_back(gen.start + gen.step * static_cast<double>(k));
      break;
    }
    case NodeKind::geometric: {
      require(gen.count >= 2, "count >= 2");
      require(gen.step > 0.0 && std::isfinite(gen.step), "step > 0");
      require(gen.ratio > 0.0 && std::isfinite(gen.ratio), "ratio > 0");
      nodes.reserve(gen.count);
      double x = gen.start;
      double gap = gen.step;
      nodes.push_back(x);
      for (std::size_t k = 1; k < gen.count; ++k) {
        x += gap;
        gap *= gen.ratio;
        nodes.push_back(x);
      }
      break;
    }
    case NodeKind::random_gaps: {
      require(gen.count >= 2, "count >= 2");
      require(gen.lo > 0.0 && gen.lo <= gen.hi && std::isfinite(gen.hi), "0 < lo <= hi");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> gap(gen.lo, gen.hi);
      nodes.reserve(gen.count);
      double x = gen.start;
      nodes.push_back(x);
      for (std::size_t k = 1; k < gen.count; ++k) {
        x += gen.lo == gen.hi ? gen.lo : gap(rng);
        nodes.push_back(x);
      }
      break;
    }
    case NodeKind::clustering: {
      require(gen.h > 0.0 && std::isfinite(gen.h), "h > 0");
      require(gen.m >= 1, "m >= 1");
      // Accumulation offsets h (1 - 2^-k), k = 1..m, on both sides.
      nodes.reserve(2 * gen.m + 2);
      for (std::size_t k = gen.m; k >= 1; --k) {
        nodes.push_back(-1.0 - gen.h * (1.0 - std::ldexp(1.0, -static_cast<int>(k))));
      }
      nodes.push_back(-1.0);
      nodes.push_back(1.0);
      for (std::size_t k = 1; k <= gen.m; ++k) {
        nodes.push_back(1.0 + gen.h * (1.0 - std::ldexp(1.0, -static_cast<int>(k))));
      }
      break;
    }
  }
  return NodeSequence(std::move(nodes));
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::uniform: return "uniform";
    case NodeKind::geometric: return "geometric";
    case NodeKind::random_gaps: return "random_gaps";
    case NodeKind::clustering: return "clustering";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& name) {
  if (name == "uniform") return NodeKind::uniform;
  if (name == "geometric") return NodeKind::geometric;
  if (name == "random_gaps") return NodeKind::random_gaps;
  if (name == "clustering") return NodeKind::clustering;
  throw ValidationError(fmt::format("unknown node kind '{}'", name));
}

}  // namespace sobtrace
