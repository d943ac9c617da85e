#include <cmath>
#include <string>

#include "pprad/greens.hpp"

namespace pprad::greens {

namespace {

using specfun::RadialKind;

void check_mie_args(int l, double kR) {
  if (l < 1) fail(ErrorKind::Domain, "Mie order l must be >= 1, got " + std::to_string(l));
  if (!(kR > 0.0) || !std::isfinite(kR)) fail(ErrorKind::Domain, "size parameter kR must be finite and > 0");
}

cplx finite(const Scaled& s, const char* what) {
  if (!s.representable()) fail(ErrorKind::Range, what);
  return s.value();
}

MieTable mirror_table(int l_max, double x) {
  const auto j = specfun::radial_table(RadialKind::Bessel, l_max, x);
  const auto h = specfun::radial_table(RadialKind::Hankel, l_max, x);
  MieTable t;
  t.t_m.resize(static_cast<std::size_t>(l_max) + 1);
  t.t_n.resize(static_cast<std::size_t>(l_max) + 1);
  for (std::size_t l = 1; l <= static_cast<std::size_t>(l_max); ++l) {
    t.t_m[l] = -(j.value[l] / h.value[l]);
    t.t_n[l] = -(j.riccati[l] / h.riccati[l]);
  }
  return t;
}

MieTable dielectric_table(int l_max, double x, cplx eps, double mu) {
  const cplx xt = std::sqrt(eps * mu) * x;
  if (std::abs(xt) > 1e6)
    fail(ErrorKind::Range, "internal size parameter above 1e6; use the perfect-mirror material instead");
  const auto j = specfun::radial_table(RadialKind::Bessel, l_max, x);
  const auto h = specfun::radial_table(RadialKind::Hankel, l_max, x);
  const auto d = specfun::bessel_log_derivative(l_max, xt);

  MieTable t;
  t.t_m.resize(static_cast<std::size_t>(l_max) + 1);
  t.t_n.resize(static_cast<std::size_t>(l_max) + 1);
  for (std::size_t l = 1; l <= static_cast<std::size_t>(l_max); ++l) {
    const cplx dl = d[l];
    t.t_m[l] = -((j.riccati[l] * cplx(mu) - j.value[l] * dl) / (h.riccati[l] * cplx(mu) - h.value[l] * dl));
    t.t_n[l] = -((j.riccati[l] * eps - j.value[l] * dl) / (h.riccati[l] * eps - h.value[l] * dl));
  }
  return t;
}

}  // namespace

cplx mie_t_mirror(int l, Polarization pol, double kR) {
  check_mie_args(l, kR);
  const auto t = mirror_table(l, kR);
  return finite(pol == Polarization::M ? t.t_m.back() : t.t_n.back(), "Mie element out of double range");
}

cplx mie_t(int l, Polarization pol, double k, double radius, cplx eps, double mu) {
  check_mie_args(l, k * radius);
  if (!(mu > 0.0)) fail(ErrorKind::Domain, "permeability must be > 0");
  const auto t = dielectric_table(l, k * radius, eps, mu);
  return finite(pol == Polarization::M ? t.t_m.back() : t.t_n.back(), "Mie element out of double range");
}

MieTable mie_table(int l_max, double k, const SphereBody& sphere, double omega) {
  check_mie_args(std::max(l_max, 1), k * sphere.radius);
  if (materials::is_mirror(sphere.material)) return mirror_table(l_max, k * sphere.radius);
  return dielectric_table(l_max, k * sphere.radius, materials::permittivity(sphere.material, omega), sphere.mu);
}

}  // namespace pprad::greens
