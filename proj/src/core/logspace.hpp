#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace clab::logspace {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), tolerant of -inf arguments.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == neg_inf) return a;
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum(std::span<const double> xs) {
  double m = neg_inf;
  for (double x : xs) m = std::max(m, x);
  if (m == neg_inf) return neg_inf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

// x * ln(x) with the convention 0 * ln 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// x * ln(x / y); 0 * ln(0/y) = 0, and positive mass on y = 0 gives +inf.
inline double xlogx_over(double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return std::numeric_limits<double>::infinity();
  return x * std::log(x / y);
}

}  // namespace clab::logspace
