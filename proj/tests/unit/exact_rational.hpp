#pragma once

// Exact-rational evaluation of the truncated hypergeometric sums, used only as
// a test oracle for frozen literals (orders up to ~12 with small rational
// arguments stay well inside the 128-bit intermediates).

#include <cstdint>
#include <stdexcept>

namespace kgo_test {

class Rational {
 public:
  Rational() = default;
  Rational(long long num, long long den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    reduce();
  }

  static Rational of_int(long long v) { return Rational(v, 1); }

  Rational operator+(const Rational& o) const {
    return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return make(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const { return make(num_ * o.num_, den_ * o.den_); }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("division by zero");
    return make(num_ * o.den_, den_ * o.num_);
  }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

 private:
  using Wide = __int128;
  __int128 num_ = 0;
  __int128 den_ = 1;

  static Wide gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(Wide num, Wide den) {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    r.reduce();
    return r;
  }

  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    const Wide g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }
};

inline Rational pochhammer_exact(const Rational& a, int k) {
  Rational v(1);
  for (int i = 0; i < k; ++i) v = v * (a + Rational(i));
  return v;
}

inline Rational factorial_exact(int k) {
  Rational v(1);
  for (int i = 2; i <= k; ++i) v = v * Rational(i);
  return v;
}

/// Term-by-term 2F1(-n, b; c; z) with exact arithmetic.
inline Rational gauss2f1_exact(int n, const Rational& b, const Rational& c,
                               const Rational& z) {
  Rational sum(0);
  for (int k = 0; k <= n; ++k) {
    Rational zk(1);
    for (int i = 0; i < k; ++i) zk = zk * z;
    const Rational term = pochhammer_exact(Rational(-n), k) * pochhammer_exact(b, k) /
                          (pochhammer_exact(c, k) * factorial_exact(k)) * zk;
    sum = sum + term;
  }
  return sum;
}

/// Term-by-term 1F1(-n; b; x) with exact arithmetic.
inline Rational kummer_exact(int n, const Rational& b, const Rational& x) {
  Rational sum(0);
  for (int k = 0; k <= n; ++k) {
    Rational xk(1);
    for (int i = 0; i < k; ++i) xk = xk * x;
    const Rational term =
        pochhammer_exact(Rational(-n), k) / (pochhammer_exact(b, k) * factorial_exact(k)) * xk;
    sum = sum + term;
  }
  return sum;
}

}  // namespace kgo_test
