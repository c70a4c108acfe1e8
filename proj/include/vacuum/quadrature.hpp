#pragma once

// Adaptive integration engine for finite, semi-infinite, oscillatory and
// nested double integrals.
//
// Every result carries an error estimate split into a truncation part (summed
// linearly over subintervals) and a rounding part (combined in quadrature,
// since rounding errors of independent panels do not add coherently). The
// rounding floor of a Gauss-Kronrod panel is 2 eps times its L1 mass.
//
// The scalar entry points below wrap the vector engine in
// vacuum/detail/adaptive.hpp, which is also used directly by the density
// evaluators to integrate several channels on one set of nodes.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vacuum {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 2'000'000;  // per axis
  std::size_t subdivision_limit = 4000;     // live subintervals per adaptive call

  // Throws std::invalid_argument on non-positive tolerances or a budget smaller
  // than one 21-point rule.
  void validate() const;

  // Same budget, tolerances divided by `factor`.
  QuadratureConfig tightened(double factor) const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  // Not converged because the rounding floor exceeds the requested tolerance.
  bool roundoff_limited = false;
  std::string diagnostic;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

// Returns `result` if converged, otherwise throws ConvergenceError tagged with `context`.
const QuadratureResult& require_converged(const QuadratureResult& result, std::string_view context);

// Shape hints for one integration axis over (0, inf).
struct AxisOptions {
  // Length over which the non-oscillatory envelope varies; sets the rational
  // map x = scale * t / (1 - t).
  double scale = 1.0;
  // Spacing of consecutive zeros of the oscillating factor. When positive the
  // axis is integrated panel by panel between zeros.
  double half_period = 0.0;
  // Wynn-epsilon acceleration of the panel partial sums. Only valid when the
  // integrand is purely oscillatory (no monotone tail component).
  bool accelerate = true;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

QuadratureResult integrate_interval(const Integrand1D& f, double a, double b,
                                    const QuadratureConfig& config = {});

// \int_0^\infty f(x) dx.
QuadratureResult integrate_semi_infinite(const Integrand1D& f, const QuadratureConfig& config = {},
                                         const AxisOptions& axis = {});

// \int_lower^\infty f(x) dx.
QuadratureResult integrate_from(const Integrand1D& f, double lower,
                                const QuadratureConfig& config = {}, const AxisOptions& axis = {});

// \int_0^\infty dk \int_0^\infty dk' f(k, k') by nested adaptive integration.
// The inner tolerance starts at the outer tolerance / 50 and is tightened when
// the inner errors accumulated over the outer axis exceed the target. Inner
// failures other than rounding limits make the outer result non-converged,
// with the offending k in the diagnostic.
QuadratureResult integrate_double_k(const Integrand2D& f, const QuadratureConfig& config = {},
                                    const AxisOptions& outer = {}, const AxisOptions& inner = {});

// Integrand of the form  sum_i c_i a_i(k) b_i(k') / (k + k').
//
// The k' factors are tabulated once on a panel cache that is refined on demand
// and shared by every outer node, which makes the double integral cost a few
// flops per node pair. Both factor families must be exponentially damped.
struct SeparableIntegrand {
  std::vector<double> coefficients;
  // Fill out[i] = a_i(k).
  std::function<void(double, std::span<double>)> outer;
  // Fill out[i] = b_i(k').
  std::function<void(double, std::span<double>)> inner;
};

QuadratureResult integrate_double_k_separable(const SeparableIntegrand& integrand,
                                              const QuadratureConfig& config = {},
                                              const AxisOptions& outer = {},
                                              const AxisOptions& inner = {});

// Wynn epsilon extrapolation of a sequence of partial sums; returns the
// highest even-column entry that could be formed.
double wynn_epsilon(std::span<const double> partial_sums);

}  // namespace vacuum
