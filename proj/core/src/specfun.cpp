#include "kgo/specfun.hpp"

#include <cmath>
#include <string>

#include "kgo/model.hpp"

namespace kgo::specfun {

namespace {

// Non-positive integer hit by (d)_k for some k <= n-1, which would divide by zero
// inside the truncated series.
bool forbidden_denominator(double d, int n) {
  if (n < 1) return false;
  if (d > 0.0 || d < -static_cast<double>(n - 1)) return false;
  return d == std::floor(d);
}

void check_order(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "series order n must be >= 0");
}

}  // namespace

double pochhammer(double a, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "pochhammer order k must be >= 0");
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= a + i;
  return v;
}

double kummer_poly(int n, double b, double x) {
  check_order(n);
  if (forbidden_denominator(b, n)) {
    fail(ErrorCode::DegenerateDenominator,
         "1F1 denominator parameter b = " + std::to_string(b));
  }
  // Multiplicative term recurrence; factorial ratios would overflow for large n.
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= static_cast<double>(-n + k) / ((b + k) * (k + 1)) * x;
    sum += term;
  }
  return sum;
}

double gauss2f1_poly(int n, double b, double c, double z) {
  check_order(n);
  if (forbidden_denominator(c, n)) {
    fail(ErrorCode::DegenerateDenominator,
         "2F1 denominator parameter c = " + std::to_string(c));
  }
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= static_cast<double>(-n + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
  }
  return sum;
}

double PolySeries::eval(double x) const {
  double v = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    v = v * x + *it;
  }
  return v;
}

PolySeries kummer_series(int n, double b) {
  check_order(n);
  if (forbidden_denominator(b, n)) {
    fail(ErrorCode::DegenerateDenominator,
         "1F1 denominator parameter b = " + std::to_string(b));
  }
  PolySeries s;
  s.coefficients.resize(n + 1);
  s.coefficients[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    s.coefficients[k + 1] =
        s.coefficients[k] * static_cast<double>(-n + k) / ((b + k) * (k + 1));
  }
  return s;
}

PolySeries gauss2f1_series(int n, double b, double c) {
  check_order(n);
  if (forbidden_denominator(c, n)) {
    fail(ErrorCode::DegenerateDenominator,
         "2F1 denominator parameter c = " + std::to_string(c));
  }
  PolySeries s;
  s.coefficients.resize(n + 1);
  s.coefficients[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    s.coefficients[k + 1] = s.coefficients[k] * static_cast<double>(-n + k) * (b + k) /
                            ((c + k) * (k + 1));
  }
  return s;
}

}  // namespace kgo::specfun
