#include <cmath>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"

namespace pprad::greens {

namespace {

// e^{ix}(-1 + ix + x^2) and e^{ix}(3 - 3ix - x^2). Below x = 1 both are
// summed from their Taylor series so the small imaginary parts (O(x^3) and
// O(x^5)) keep full relative precision.
void free_coefficients(double x, cplx& a, cplx& b) {
  if (x >= 1.0) {
    const cplx e = std::polar(1.0, x);
    a = e * cplx(-1.0 + x * x, x);
    b = e * cplx(3.0 - x * x, -3.0 * x);
    return;
  }
  // coefficient of x^n: i^n [-1/n! + 1/(n-1)! - 1/(n-2)!] and i^n [3/n! - 3/(n-1)! + 1/(n-2)!]
  cplx sa(0.0), sb(0.0);
  cplx in(1.0, 0.0);  // i^n
  double xn = 1.0;    // x^n
  double f0 = 1.0;    // 1/n!
  double f1 = 0.0;    // 1/(n-1)!
  double f2 = 0.0;    // 1/(n-2)!
  for (int n = 0; n <= 40; ++n) {
    sa += in * (xn * (-f0 + f1 - f2));
    sb += in * (xn * (3.0 * f0 - 3.0 * f1 + f2));
    f2 = f1;
    f1 = f0;
    f0 /= (n + 1.0);
    xn *= x;
    in *= cplx(0.0, 1.0);
    if (xn * f2 < 1e-20 && n > 4) break;
  }
  a = sa;
  b = sb;
}

}  // namespace

GreensTensor g0(const Vec3& r, const Vec3& rp, double k) {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  const Vec3 sep = r - rp;
  const double d = sep.norm();
  if (!(d > 0.0)) fail(ErrorKind::CoincidentPoint, "free Green's function at coincident points");
  const Vec3 n = sep / d;
  cplx a, b;
  free_coefficients(k * d, a, b);
  const double pref = 1.0 / (4.0 * constants::pi * k * k * d * d * d);
  GreensTensor g;
  g.value = pref * (a * Mat3::Identity() + b * (n * n.transpose()).cast<cplx>());
  return g;
}

double im_g0_trace(double k) { return k / (2.0 * constants::pi); }

GreensTensor g_pp(const Vec3& r, const Vec3& rp, double k, const Vec3& r0, cplx alpha) {
  if ((r - rp).norm() == 0.0 || (r - r0).norm() == 0.0 || (rp - r0).norm() == 0.0)
    fail(ErrorKind::CoincidentPoint, "point-dipole Green's function needs pairwise distinct points");
  GreensTensor g = g0(r, rp, k);
  g.value += 4.0 * constants::pi * k * k * alpha * (g0(r, r0, k).value * g0(r0, rp, k).value);
  return g;
}

}  // namespace pprad::greens
