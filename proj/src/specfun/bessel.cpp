#include <cmath>
#include <numbers>
#include <string>

#include "pprad/errors.hpp"
#include "pprad/specfun.hpp"

namespace pprad::specfun {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_order(int l) {
  if (l < 0) fail(ErrorKind::Domain, "negative Bessel order " + std::to_string(l));
  if (l > kOrderCap)
    fail(ErrorKind::Domain, "Bessel order " + std::to_string(l) + " above cap " +
                                std::to_string(kOrderCap));
}

// e^{a} for real a, as a scaled number (a may exceed the double range).
Scaled scaled_exp(double a) {
  const double n = std::floor(a / kLn2);
  return Scaled(std::complex<double>(std::exp(a - n * kLn2), 0.0), static_cast<std::int64_t>(n));
}

// sin z and cos z with the e^{|Im z|} growth factored out.
void scaled_sin_cos(cplx z, Scaled& sin_z, Scaled& cos_z) {
  const double b = std::abs(z.imag());
  if (b < 300.0) {
    sin_z = Scaled(std::sin(z));
    cos_z = Scaled(std::cos(z));
    return;
  }
  const cplx i(0.0, 1.0);
  const cplx ep = std::exp(i * z - b);   // e^{iz} / e^{b}
  const cplx em = std::exp(-i * z - b);  // e^{-iz} / e^{b}
  const Scaled grow = scaled_exp(b);
  sin_z = Scaled((ep - em) / (2.0 * i)) * grow;
  cos_z = Scaled((ep + em) / 2.0) * grow;
}

// rho_l = j_l / j_{l-1} for l = 1..l_max by backward recurrence.
std::vector<cplx> bessel_ratios(int l_max, cplx z) {
  const int start = l_max + static_cast<int>(std::ceil(std::abs(z))) + 16;
  std::vector<cplx> rho(static_cast<std::size_t>(l_max) + 1, cplx(0.0));
  cplx next = z / (2.0 * start + 3.0);
  for (int l = start; l >= 1; --l) {
    cplx denom = (2.0 * l + 1.0) / z - next;
    if (denom == cplx(0.0)) denom = cplx(1e-300, 0.0);
    const cplx r = 1.0 / denom;
    if (l <= l_max) rho[static_cast<std::size_t>(l)] = r;
    next = r;
  }
  return rho;
}

}  // namespace

std::vector<Scaled> sph_bessel_j_sequence(int l_max, cplx z) {
  check_order(l_max);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorKind::Domain, "non-finite Bessel argument");

  std::vector<Scaled> out(static_cast<std::size_t>(l_max) + 1);
  if (z == cplx(0.0)) {
    out[0] = Scaled(1.0);
    return out;
  }

  Scaled s, c;
  scaled_sin_cos(z, s, c);
  const Scaled j0 = s / Scaled(z);
  out[0] = j0;
  if (l_max == 0) return out;

  const auto rho = bessel_ratios(l_max, z);
  // Normalize against whichever of j_0, j_1 is larger; j_0 vanishes at z = n pi.
  const Scaled j1 = s / Scaled(z * z) - c / Scaled(z);
  Scaled running;
  if (j0.log2_abs() >= j1.log2_abs() || std::abs(z) < 0.5) {
    running = j0;
    for (int l = 1; l <= l_max; ++l) {
      running = running * Scaled(rho[static_cast<std::size_t>(l)]);
      out[static_cast<std::size_t>(l)] = running;
    }
  } else {
    out[0] = j1 / Scaled(rho[1]);
    running = j1;
    out[1] = j1;
    for (int l = 2; l <= l_max; ++l) {
      running = running * Scaled(rho[static_cast<std::size_t>(l)]);
      out[static_cast<std::size_t>(l)] = running;
    }
  }
  return out;
}

Scaled sph_bessel_j_scaled(int l, cplx z) { return sph_bessel_j_sequence(l, z).back(); }

cplx sph_bessel_j(int l, cplx z) {
  const Scaled v = sph_bessel_j_scaled(l, z);
  if (!v.representable()) fail(ErrorKind::Range, "j_l(z) overflows the double range");
  return v.value();
}

namespace {

// y_0..y_lmax for real x > 0 by upward recurrence with rescaling.
std::vector<Scaled> bessel_y_sequence(int l_max, double x) {
  std::vector<Scaled> out(static_cast<std::size_t>(l_max) + 1);
  double prev = -std::cos(x) / x;
  out[0] = Scaled(prev);
  if (l_max == 0) return out;
  double cur = -std::cos(x) / (x * x) - std::sin(x) / x;
  std::int64_t exp = 0;
  out[1] = Scaled(cplx(cur), exp);
  for (int l = 1; l < l_max; ++l) {
    const double nxt = (2.0 * l + 1.0) / x * cur - prev;
    prev = cur;
    cur = nxt;
    if (std::abs(cur) > 0x1p500) {
      cur = std::ldexp(cur, -500);
      prev = std::ldexp(prev, -500);
      exp += 500;
    }
    out[static_cast<std::size_t>(l) + 1] = Scaled(cplx(cur), exp);
  }
  return out;
}

void check_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorKind::Domain, "spherical Hankel/Neumann argument must be finite and > 0");
}

}  // namespace

Scaled sph_bessel_y_scaled(int l, double x) {
  check_order(l);
  check_positive(x);
  return bessel_y_sequence(l, x).back();
}

double sph_bessel_y(int l, double x) {
  const Scaled v = sph_bessel_y_scaled(l, x);
  if (!v.representable()) fail(ErrorKind::Range, "y_l(x) overflows the double range");
  return v.value().real();
}

Scaled sph_hankel1_scaled(int l, double x) {
  check_order(l);
  check_positive(x);
  const Scaled j = sph_bessel_j_sequence(l, cplx(x)).back();
  const Scaled y = bessel_y_sequence(l, x).back();
  return j + y * cplx(0.0, 1.0);
}

cplx sph_hankel1(int l, double x) {
  const Scaled v = sph_hankel1_scaled(l, x);
  if (!v.representable()) fail(ErrorKind::Range, "h_l(x) overflows the double range");
  return v.value();
}

RadialTable radial_table(RadialKind kind, int l_max, double x) {
  check_order(l_max);
  if (kind == RadialKind::Bessel) {
    if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::Domain, "Bessel table argument must be finite and >= 0");
  } else {
    check_positive(x);
  }

  RadialTable t;
  const auto n = static_cast<std::size_t>(l_max) + 1;
  t.riccati.resize(n);
  switch (kind) {
    case RadialKind::Bessel:
      t.value = sph_bessel_j_sequence(l_max, cplx(x));
      t.riccati[0] = Scaled(std::cos(x));
      break;
    case RadialKind::Neumann:
      t.value = bessel_y_sequence(l_max, x);
      t.riccati[0] = Scaled(std::sin(x));
      break;
    case RadialKind::Hankel: {
      const auto j = sph_bessel_j_sequence(l_max, cplx(x));
      const auto y = bessel_y_sequence(l_max, x);
      t.value.resize(n);
      for (std::size_t l = 0; l < n; ++l) t.value[l] = j[l] + y[l] * cplx(0.0, 1.0);
      t.riccati[0] = Scaled(std::exp(cplx(0.0, x)));
      break;
    }
  }
  for (int l = 1; l <= l_max; ++l) {
    const auto i = static_cast<std::size_t>(l);
    t.riccati[i] = t.value[i - 1] * cplx(x) - t.value[i] * cplx(static_cast<double>(l));
  }
  return t;
}

cplx riccati_deriv(RadialKind kind, int l, double x) {
  const Scaled v = radial_table(kind, l, x).riccati.back();
  if (!v.representable()) fail(ErrorKind::Range, "Riccati derivative overflows the double range");
  return v.value();
}

std::vector<cplx> bessel_log_derivative(int l_max, cplx z) {
  check_order(l_max);
  if (z == cplx(0.0)) fail(ErrorKind::Domain, "logarithmic derivative at z = 0");
  const int start = std::max(l_max, static_cast<int>(std::ceil(std::abs(z)))) + 16;
  // D_n = psi_n' / psi_n with psi_n = z j_n; D_{n-1} = n/z - 1/(D_n + n/z).
  std::vector<cplx> out(static_cast<std::size_t>(l_max) + 1);
  cplx d(0.0);
  for (int n = start; n >= 1; --n) {
    if (n <= l_max) out[static_cast<std::size_t>(n)] = z * d;
    cplx denom = d + static_cast<double>(n) / z;
    if (denom == cplx(0.0)) denom = cplx(1e-300, 0.0);
    d = static_cast<double>(n) / z - 1.0 / denom;
  }
  out[0] = z * d;
  return out;
}

}  // namespace pprad::specfun
