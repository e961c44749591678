#pragma once

#include <vector>

namespace kgo::specfun {

/// Rising factorial a*(a+1)*...*(a+k-1); 1 for k = 0. Total for k >= 0.
double pochhammer(double a, int k);

/// Terminating confluent hypergeometric 1F1(-n; b; x), a degree-n polynomial.
/// Throws DegenerateDenominator when b is a non-positive integer >= -(n-1).
double kummer_poly(int n, double b, double x);

/// Terminating Gauss hypergeometric 2F1(-n, b; c; z), a degree-n polynomial.
/// Throws DegenerateDenominator when c is a non-positive integer >= -(n-1).
double gauss2f1_poly(int n, double b, double c, double z);

/// Explicit coefficient form of the truncated series; c0 is exactly 1.
struct PolySeries {
  std::vector<double> coefficients;  // c0..cn in the series argument
  double eval(double x) const;       // Horner
};

PolySeries kummer_series(int n, double b);
PolySeries gauss2f1_series(int n, double b, double c);

}  // namespace kgo::specfun
