#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace sobtrace {

/// Raised for malformed input: bad nodes, mismatched lengths, out-of-range
/// parameters. `index()` names the offending element when one exists.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::invalid_argument(what), index_(index) {}

  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// Raised when an iterative method stops before reaching its tolerance.
/// Carries the best estimate found and the tolerance actually achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double achieved_tolerance)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_(achieved_tolerance) {}

  double best_estimate() const { return best_estimate_; }
  double achieved_tolerance() const { return achieved_; }

 private:
  double best_estimate_;
  double achieved_;
};

}  // namespace sobtrace
