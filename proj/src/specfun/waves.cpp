#include <cmath>
#include <string>

#include "pprad/errors.hpp"
#include "pprad/specfun.hpp"

namespace pprad::specfun {

WaveIndex WaveIndex::make(Polarization pol, int l, int m) {
  if (l < 1) fail(ErrorKind::Domain, "wave order l must be >= 1, got " + std::to_string(l));
  if (std::abs(m) > l) fail(ErrorKind::Domain, "wave index |m| > l");
  return {pol, l, m};
}

SphericalPoint to_spherical(const Vec3& r) {
  SphericalPoint p;
  p.r = r.norm();
  const double rho = std::hypot(r.x(), r.y());
  p.theta = p.r == 0.0 ? 0.0 : std::atan2(rho, r.z());
  p.phi = rho == 0.0 ? 0.0 : std::atan2(r.y(), r.x());
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  p.r_hat = Vec3(st * cp, st * sp, ct);
  p.theta_hat = Vec3(ct * cp, ct * sp, -st);
  p.phi_hat = Vec3(-sp, cp, 0.0);
  return p;
}

VectorHarmonics vector_harmonics(const SphericalPoint& pt, const HarmonicValue& y) {
  const cplx i(0.0, 1.0);
  const cplx ims = i * y.m_over_sin;
  VectorHarmonics v;
  v.radial = pt.r_hat.cast<cplx>() * y.value;
  v.x = pt.theta_hat.cast<cplx>() * ims - pt.phi_hat.cast<cplx>() * y.d_theta;
  v.z = pt.theta_hat.cast<cplx>() * y.d_theta + pt.phi_hat.cast<cplx>() * ims;
  return v;
}

cplx wave_prefactor(int m, double k) {
  const double s = std::sqrt(k);
  return (std::abs(m) % 2 == 0) ? cplx(s, 0.0) : cplx(0.0, s);
}

CVec3 spherical_wave(const WaveIndex& idx, Regularity reg, double k, const Vec3& r) {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  const auto w = WaveIndex::make(idx.pol, idx.l, idx.m);
  const auto pt = to_spherical(r);
  if (reg == Regularity::Outgoing && pt.r == 0.0)
    fail(ErrorKind::Singularity, "outgoing spherical wave evaluated at the origin");

  const double x = k * pt.r;
  const auto y = sph_harmonic(w.l, w.m, pt.theta, pt.phi);
  const auto vh = vector_harmonics(pt, y);
  const cplx pref = wave_prefactor(w.m, k) / std::sqrt(static_cast<double>(w.l) * (w.l + 1));
  const auto l = static_cast<std::size_t>(w.l);

  auto finite = [](const Scaled& s) {
    if (!s.representable()) fail(ErrorKind::Range, "spherical wave magnitude overflows");
    return s.value();
  };

  if (x == 0.0) {
    // Regular waves at the origin: only N_{1m} survives, with j_1/x = (x j_1)'/x = 1/3, 2/3.
    if (w.pol == Polarization::M || w.l != 1) return CVec3::Zero();
    return pref * (2.0 * (1.0 / 3.0) * vh.radial + (2.0 / 3.0) * vh.z);
  }

  const auto t = radial_table(reg == Regularity::Regular ? RadialKind::Bessel : RadialKind::Hankel,
                              w.l, x);
  if (w.pol == Polarization::M) return pref * finite(t.value[l]) * vh.x;
  const double ll1 = static_cast<double>(w.l) * (w.l + 1);
  const cplx a = finite(t.value[l] * cplx(ll1 / x));
  const cplx b = finite(t.riccati[l] * cplx(1.0 / x));
  return pref * (a * vh.radial + b * vh.z);
}

cplx normal_wavenumber(double k, double k_perp) {
  if (k_perp <= k) return {std::sqrt((k - k_perp) * (k + k_perp)), 0.0};
  return {0.0, std::sqrt((k_perp - k) * (k_perp + k))};
}

CVec3 plane_wave(PlaneWave kind, const Eigen::Vector2d& k_perp, double k,
                 const Eigen::Vector2d& x_perp, double z) {
  const double kp = k_perp.norm();
  if (!(kp > 0.0)) fail(ErrorKind::Domain, "plane wave needs |k_perp| > 0");
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  const cplx kz = normal_wavenumber(k, kp);
  const cplx phase = std::exp(cplx(0.0, 1.0) * (k_perp.dot(x_perp) + kz * z));
  const double kx = k_perp.x(), ky = k_perp.y();
  CVec3 v;
  switch (kind) {
    case PlaneWave::M:
      v << ky / kp, -kx / kp, 0.0;
      break;
    case PlaneWave::NPlus:
    case PlaneWave::NMinus: {
      const double s = kind == PlaneWave::NPlus ? 1.0 : -1.0;
      v << s * kx * kz / (k * kp), s * ky * kz / (k * kp), kp * kp / (k * kp);
      break;
    }
  }
  return v * phase;
}

}  // namespace pprad::specfun
