#include <cmath>
#include <numbers>
#include <string>

#include "pprad/errors.hpp"
#include "pprad/specfun.hpp"

namespace pprad::specfun {

namespace {

const double kInvSqrt4Pi = 0.5 / std::sqrt(std::numbers::pi);

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    fail(ErrorKind::Domain, "polar angle outside [0, pi]");
}

}  // namespace

LegendreColumns::LegendreColumns(int l_max, double theta)
    : l_max_(l_max), cos_t_(std::cos(theta)), sin_t_(std::sin(theta)) {
  if (l_max < 0) fail(ErrorKind::Domain, "negative harmonic degree");
  check_theta(theta);
  if (theta == std::numbers::pi) {
    cos_t_ = -1.0;
    sin_t_ = 0.0;
  }
  // pi_1^1 = Ybar_1^1 / sin(theta) = -sqrt(3 / (8 pi))
  seed_mant_ = -std::sqrt(1.5) * kInvSqrt4Pi;

  // Column m = 1 of pi, used for the m = 0 theta-derivative.
  p1_.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
  if (l_max >= 1) {
    double vm2 = 0.0, vm1 = seed_mant_;
    p1_[1] = sin_t_ * vm1;
    for (int l = 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - 1.0));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - 1.0) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double v = a * (cos_t_ * vm1 - b * vm2);
      vm2 = vm1;
      vm1 = v;
      p1_[static_cast<std::size_t>(l)] = sin_t_ * v;
    }
  }
}

const LegendreColumn& LegendreColumns::next() {
  const int m = m_next_++;
  if (m > l_max_) fail(ErrorKind::Domain, "Legendre column beyond l_max");
  const std::size_t n = static_cast<std::size_t>(l_max_ - m) + 1;
  col_.m = m;
  col_.p.assign(n, 0.0);
  col_.dp.assign(n, 0.0);
  col_.mq.assign(n, 0.0);

  if (m == 0) {
    double vm2 = 0.0, vm1 = kInvSqrt4Pi;
    col_.p[0] = vm1;
    for (int l = 1; l <= l_max_; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l));
      const double b = l >= 2 ? std::sqrt(((l - 1.0) * (l - 1.0)) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0)) : 0.0;
      const double v = a * (cos_t_ * vm1 - b * vm2);
      vm2 = vm1;
      vm1 = v;
      const auto i = static_cast<std::size_t>(l);
      col_.p[i] = v;
      col_.dp[i] = std::sqrt(static_cast<double>(l) * (l + 1)) * p1_[i];
    }
    return col_;
  }

  if (m >= 2) {
    seed_mant_ *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_t_;
    if (seed_mant_ != 0.0) {
      int e = 0;
      seed_mant_ = std::frexp(seed_mant_, &e);
      seed_exp_ += e;
    }
  }
  if (seed_mant_ == 0.0) return col_;  // pole: pi_l^m vanishes for m >= 2

  // pi_l^m = Ybar_l^m / sin(theta) as v * 2^exp
  long exp = seed_exp_;
  double vm2 = 0.0, vm1 = seed_mant_;
  auto emit = [&](int l, double v, double v_prev) {
    const auto i = static_cast<std::size_t>(l - m);
    const double scale_l = static_cast<double>(l);
    const double pi_l = std::ldexp(v, static_cast<int>(exp));
    const double pi_prev = std::ldexp(v_prev, static_cast<int>(exp));
    col_.p[i] = sin_t_ * pi_l;
    col_.mq[i] = m * pi_l;
    const double c = l > m ? std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (l - m) * (l + m)) : 0.0;
    col_.dp[i] = scale_l * cos_t_ * pi_l - c * pi_prev;
  };
  emit(m, vm1, 0.0);
  for (int l = m + 1; l <= l_max_; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                               (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    double v = a * (cos_t_ * vm1 - b * vm2);
    vm2 = vm1;
    vm1 = v;
    if (std::abs(v) > 0x1p400) {
      v = std::ldexp(v, -400);
      vm1 = v;
      vm2 = std::ldexp(vm2, -400);
      exp += 400;
    }
    emit(l, vm1, vm2);
  }
  return col_;
}

HarmonicTable::HarmonicTable(int l_max, double theta, double phi) : l_max_(l_max), phi_(phi) {
  const std::size_t n = index(l_max, l_max) + 1;
  p_.resize(n);
  dp_.resize(n);
  mq_.resize(n);
  LegendreColumns cols(l_max, theta);
  for (int m = 0; m <= l_max; ++m) {
    const auto& c = cols.next();
    for (int l = m; l <= l_max; ++l) {
      const auto i = index(l, m);
      const auto j = static_cast<std::size_t>(l - m);
      p_[i] = c.p[j];
      dp_[i] = c.dp[j];
      mq_[i] = c.mq[j];
    }
  }
}

HarmonicValue HarmonicTable::operator()(int l, int m) const {
  if (l < 0 || l > l_max_ || std::abs(m) > l)
    fail(ErrorKind::Domain, "harmonic index (" + std::to_string(l) + ", " + std::to_string(m) + ") out of range");
  const int am = std::abs(m);
  const auto i = index(l, am);
  const cplx phase = std::polar(1.0, m * phi_);
  // Y_l^{-m} = (-1)^m conj(Y_l^m)
  const double s = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
  const double q = m < 0 ? -mq_[i] : mq_[i];
  return {s * p_[i] * phase, s * dp_[i] * phase, s * q * phase};
}

HarmonicValue sph_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l)
    fail(ErrorKind::Domain, "harmonic index (" + std::to_string(l) + ", " + std::to_string(m) + ") out of range");
  check_theta(theta);
  LegendreColumns cols(l, theta);
  const int am = std::abs(m);
  const LegendreColumn* c = nullptr;
  for (int k = 0; k <= am; ++k) c = &cols.next();
  const auto j = static_cast<std::size_t>(l - am);
  const cplx phase = std::polar(1.0, m * phi);
  const double s = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
  const double q = m < 0 ? -c->mq[j] : c->mq[j];
  return {s * c->p[j] * phase, s * c->dp[j] * phase, s * q * phase};
}

}  // namespace pprad::specfun
