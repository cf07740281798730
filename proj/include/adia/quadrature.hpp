#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace adia {

inline constexpr double kDefaultQuadratureTol = 1e-10;

struct QuadratureOptions {
  double abs_tol = kDefaultQuadratureTol;
  /// Optional relative tolerance; the integral is accepted when either is met.
  double rel_tol = 0.0;
  /// Maximum number of bisected subintervals.
  std::size_t max_intervals = 2000;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b] to an absolute tolerance
/// (or the optional relative one).
/// Throws QuadratureFailure when the tolerance is not met within the budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

/// Fourth-order cumulative integral of samples on a uniform grid of spacing h.
/// result[0] == 0 and result[i] approximates the integral from x_0 to x_i.
/// Each panel [x_i, x_i+1] integrates the cubic through four neighbouring
/// samples (shifted inwards at the two ends).
template <typename T>
std::vector<T> cumulative_integral(std::span<const T> values, double h) {
  const std::size_t n = values.size();
  if (n < 4) throw std::invalid_argument("cumulative_integral needs at least 4 samples");
  std::vector<T> out(n, T{});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    T panel;
    if (i == 0) {
      panel = h / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3]);
    } else if (i + 2 == n) {
      panel = h / 24.0 * (9.0 * values[n - 1] + 19.0 * values[n - 2] - 5.0 * values[n - 3] +
                          values[n - 4]);
    } else {
      panel = h / 24.0 *
              (-values[i - 1] + 13.0 * values[i] + 13.0 * values[i + 1] - values[i + 2]);
    }
    out[i + 1] = out[i] + panel;
  }
  return out;
}

/// Five-point finite-difference derivative on a uniform grid: central in the
/// interior, one-sided five-point stencils on the first and last two points.
template <typename T>
std::vector<T> differentiate(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("differentiate needs at least 5 samples");
  std::vector<T> d(n);
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                   f[n - 5]);
  d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                   3.0 * f[n - 5]);
  return d;
}

}  // namespace adia
