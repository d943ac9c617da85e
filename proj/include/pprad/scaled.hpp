#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace pprad {

/// Complex number stored as mantissa * 2^exponent.
///
/// Spherical Bessel and Hankel functions of high order leave the double range
/// long before the products the Green's functions need do. Carrying the
/// binary exponent separately keeps every intermediate finite.
class Scaled {
 public:
  Scaled() = default;
  Scaled(std::complex<double> value) : mant_(value) { normalize(); }  // NOLINT
  Scaled(double value) : mant_(value) { normalize(); }                // NOLINT
  Scaled(std::complex<double> mantissa, std::int64_t exponent)
      : mant_(mantissa), exp_(exponent) {
    normalize();
  }

  std::complex<double> mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return mant_ == std::complex<double>(0.0, 0.0); }

  /// log2 |value|; -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -INFINITY;
    return std::log2(std::abs(mant_)) + static_cast<double>(exp_);
  }

  /// Unscaled value. Overflows to inf / underflows to zero outside the
  /// double range; check representable() first when that matters.
  std::complex<double> value() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp_ > 4096) return {INFINITY * sign(mant_.real()), INFINITY * sign(mant_.imag())};
    if (exp_ < -4096) return {0.0, 0.0};
    const int e = static_cast<int>(exp_);
    return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
  }

  bool representable() const { return is_zero() || exp_ < 1020; }

  Scaled conj() const { return Scaled(std::conj(mant_), exp_); }

  friend Scaled operator*(const Scaled& a, const Scaled& b) {
    return Scaled(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }
  friend Scaled operator/(const Scaled& a, const Scaled& b) {
    return Scaled(a.mant_ / b.mant_, a.exp_ - b.exp_);
  }
  friend Scaled operator*(const Scaled& a, std::complex<double> s) {
    return Scaled(a.mant_ * s, a.exp_);
  }
  friend Scaled operator*(std::complex<double> s, const Scaled& a) { return a * s; }
  friend Scaled operator+(const Scaled& a, const Scaled& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp_ >= b.exp_) return Scaled(a.mant_ + shifted(b.mant_, b.exp_ - a.exp_), a.exp_);
    return Scaled(shifted(a.mant_, a.exp_ - b.exp_) + b.mant_, b.exp_);
  }
  friend Scaled operator-(const Scaled& a) { return Scaled(-a.mant_, a.exp_); }
  friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

 private:
  static double sign(double v) { return v < 0 ? -1.0 : (v > 0 ? 1.0 : 0.0); }

  static std::complex<double> shifted(std::complex<double> m, std::int64_t by) {
    if (by < -2000) return {0.0, 0.0};
    const int e = static_cast<int>(by);
    return {std::ldexp(m.real(), e), std::ldexp(m.imag(), e)};
  }

  void normalize() {
    const double a = std::max(std::abs(mant_.real()), std::abs(mant_.imag()));
    if (a == 0.0 || !std::isfinite(a)) {
      if (a == 0.0) exp_ = 0;
      return;
    }
    int e = 0;
    std::frexp(a, &e);
    mant_ = {std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e)};
    exp_ += e;
  }

  std::complex<double> mant_{0.0, 0.0};
  std::int64_t exp_ = 0;
};

}  // namespace pprad
