#ifndef COORDSIM_COMMON_HPP
#define COORDSIM_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coordsim {

// Default cap on dense enumeration, in tensor cells.
inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 24;

// Mass below this is treated as exact zero for support computations.
inline constexpr double kSupportEps = 1e-15;

// Unit-sum / row-stochastic validation tolerance.
inline constexpr double kMassTol = 1e-12;

/// Structural problem with axes: mismatched, overlapping, unknown.
class AxisError : public std::invalid_argument {
 public:
  explicit AxisError(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested enumeration exceeds the configured budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t required_cells)
      : std::runtime_error(what + " (requires " + std::to_string(required_cells) +
                           " cells)"),
        required(required_cells) {}
  std::size_t required;
};

/// Numeric content fails an invariant (negative mass, sum != 1, residual too big).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation's stated precondition does not hold for the given inputs.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Kahan-compensated accumulator. TV sums over ~1e7 cells need the
// compensation to stay near 1e-15 absolute error.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace coordsim

#endif  // COORDSIM_COMMON_HPP
