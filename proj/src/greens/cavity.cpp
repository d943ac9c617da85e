#include <algorithm>
#include <cmath>
#include <string>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"

namespace pprad::greens {

namespace {

using specfun::RadialKind;

}  // namespace

cplx cavity_t_mirror(int l, Polarization pol, double kR) {
  if (l < 1) fail(ErrorKind::Domain, "cavity order l must be >= 1, got " + std::to_string(l));
  if (!(kR > 0.0) || !std::isfinite(kR)) fail(ErrorKind::Domain, "kR must be finite and > 0");
  const auto j = specfun::radial_table(RadialKind::Bessel, l, kR);
  const auto y = specfun::radial_table(RadialKind::Neumann, l, kR);
  const auto i = static_cast<std::size_t>(l);
  const Scaled& num = pol == Polarization::M ? y.value[i] : y.riccati[i];
  const Scaled& den = pol == Polarization::M ? j.value[i] : j.riccati[i];
  // zeros of j_l and (x j_l)' only occur for kR of order l or above
  if (den.is_zero() || (kR > 0.9 * l && den.log2_abs() - num.log2_abs() < std::log2(1e-12)))
    fail(ErrorKind::Resonance, "kR at a cavity eigenmode");
  // -h/j = -1 - i y/j, with Re h = j taken exactly
  const Scaled ratio = num / den;
  if (!ratio.representable()) fail(ErrorKind::Range, "cavity element out of double range");
  return {-1.0, -ratio.value().real()};
}

double im_g_cavity_trace(const Vec3& r1, double k, const MirrorCavity& cavity, const MultipolePolicy& policy,
                         int* l_used) {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  if (!(cavity.radius > 0.0)) fail(ErrorKind::Domain, "cavity radius must be > 0");
  const Vec3 r = r1 - cavity.center;
  if (!(r.norm() < cavity.radius * (1.0 - 1e-12))) fail(ErrorKind::Geometry, "point not inside the cavity");

  const double free = im_g0_trace(k);
  const double x = k * r.norm();
  const bool fixed = policy.l_fixed > 0;
  const int cap = std::min(policy.l_cap, specfun::kOrderCap);
  const double tiny = std::min(policy.rel_tol, 1e-16) * free;
  int L = fixed ? policy.l_fixed : std::clamp(32 + static_cast<int>(std::ceil(2.0 * x)), 1, cap);

  while (true) {
    const auto blk = angular_blocks(L, r, r);
    std::vector<Scaled> jv, jr;
    if (x > 0.0) {
      const auto t = specfun::radial_table(RadialKind::Bessel, L, x);
      jv = t.value;
      jr = t.riccati;
    }
    double sum = 0.0;
    int small = 0, last = 0;
    for (int l = 1; l <= L; ++l) {
      const auto i = static_cast<std::size_t>(l);
      const double ll1 = static_cast<double>(l) * (l + 1.0);
      double f2 = 0.0, a = 0.0, b = 0.0;
      if (x > 0.0) {
        f2 = (jv[i] * jv[i]).value().real();
        a = (jv[i] * cplx(ll1 / x)).value().real();
        b = (jr[i] * cplx(1.0 / x)).value().real();
      } else if (l == 1) {
        a = b = 2.0 / 3.0;
      }
      const auto& B = blk[i];
      const cplx tr = f2 * B.mm.trace() + a * a * B.rr.trace() + a * b * (B.rz.trace() + B.zr.trace()) +
                      b * b * B.zz.trace();
      // Re T = -1 for both polarizations
      const double add = -(k / ll1) * tr.real();
      sum += add;
      last = l;
      if (fixed) continue;
      small = (std::abs(add) < tiny) ? small + 1 : 0;
      if (small == 3) break;
    }
    if (l_used) *l_used = last;
    if (fixed || small == 3) return free + sum;
    if (L >= cap) {
      GreensTensor partial;
      partial.value = Mat3::Identity() * cplx(0.0, (free + sum) / 3.0);
      partial.l_max = last;
      throw ConvergenceError("cavity sum not converged at l_cap = " + std::to_string(cap), partial);
    }
    L = std::min(2 * L, cap);
  }
}

}  // namespace pprad::greens
