#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace solvstate {

/// A real number stored as sign and natural log of its magnitude.
struct LogReal {
  double log_abs = 0.0;
  int sign = 1;

  static LogReal zero() { return {-std::numeric_limits<double>::infinity(), 0}; }
  static LogReal from_log(double log_abs) { return {log_abs, 1}; }
  static LogReal from_value(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::fabs(v)), v < 0 ? -1 : 1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  bool is_zero() const { return sign == 0; }

  friend LogReal operator*(LogReal a, LogReal b) { return {a.log_abs + b.log_abs, a.sign * b.sign}; }
  friend LogReal operator/(LogReal a, LogReal b) { return {a.log_abs - b.log_abs, a.sign * b.sign}; }
};

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

/// |exp(a - b) - 1|, the relative deviation of two log-domain values.
inline double log_rel_diff(double a, double b) { return std::fabs(std::expm1(a - b)); }

}  // namespace solvstate
