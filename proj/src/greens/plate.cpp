#include <cmath>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"
#include "pprad/quadrature.hpp"

namespace pprad::greens {

double mirror_image_bracket(double u) {
  if (std::abs(u) >= 0.5) return -std::sin(u) + u * std::cos(u) + 0.5 * u * u * std::sin(u);
  // sum_{n>=1} (-1)^{n+1} n (2n-1) u^{2n+1} / (2n+1)!
  double term = u;  // u^{2n+1} / (2n+1)! at n = 0
  double sum = 0.0;
  for (int n = 1; n <= 20; ++n) {
    term *= u * u / ((2.0 * n) * (2.0 * n + 1.0));
    const double add = ((n % 2 == 1) ? 1.0 : -1.0) * n * (2.0 * n - 1.0) * term;
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double im_g_trace_plate_mirror(double d, double k) {
  if (!(d > 0.0)) fail(ErrorKind::Domain, "plate distance must be > 0");
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  const double pi = constants::pi;
  return k / (2.0 * pi) - mirror_image_bracket(2.0 * k * d) / (8.0 * pi * k * k * d * d * d);
}

namespace {

cplx medium_kz(double k, double k_perp, cplx eps, double mu) {
  cplx kz1 = std::sqrt(eps * mu * k * k - k_perp * k_perp);
  if (kz1.imag() < 0.0) kz1 = -kz1;
  return kz1;
}

}  // namespace

cplx fresnel_rm(double k, cplx kz, double k_perp, cplx eps, double mu) {
  const cplx kz1 = medium_kz(k, k_perp, eps, mu);
  return (mu * kz - kz1) / (mu * kz + kz1);
}

cplx fresnel_rn(double k, cplx kz, double k_perp, cplx eps, double mu) {
  const cplx kz1 = medium_kz(k, k_perp, eps, mu);
  return (eps * kz - kz1) / (eps * kz + kz1);
}

PlateTraceResult im_g_trace_plate(double d, double k, const std::function<FresnelPair(double)>& coeffs,
                                  double rel_tol) {
  if (!(d > 0.0)) fail(ErrorKind::Domain, "plate distance must be > 0");
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  const double pi = constants::pi;
  const double free = k / (2.0 * pi);

  quadrature::Options opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = rel_tol * free;

  // k_perp = k sin(theta), theta in [0, pi/2]
  auto prop = [&](double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    const FresnelPair r = coeffs(k * s);
    const cplx phase = std::polar(1.0, 2.0 * k * d * c);
    return k / (4.0 * pi) * s * (phase * (r.r_m + r.r_n * (s * s - c * c))).real();
  };
  std::vector<double> bp_prop;
  const int n_prop = 4 + static_cast<int>(std::ceil(k * d));
  for (int i = 0; i <= n_prop; ++i) bp_prop.push_back(0.5 * pi * i / n_prop);
  const auto rp = quadrature::integrate(prop, bp_prop, opts);

  // k_perp = sqrt(k^2 + kappa^2), truncated where e^{-2 kappa d} < 1e-16
  const double kappa_max = std::log(1e16) / (2.0 * d);
  auto evan = [&](double kappa) {
    const FresnelPair r = coeffs(std::sqrt(k * k + kappa * kappa));
    const cplx sum = r.r_m + r.r_n * ((k * k + 2.0 * kappa * kappa) / (k * k));
    return std::exp(-2.0 * kappa * d) * sum.imag() / (4.0 * pi);
  };
  std::vector<double> bp_evan{0.0};
  for (double f : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0})
    if (f / d < kappa_max) bp_evan.push_back(f / d);
  bp_evan.push_back(kappa_max);
  const auto re = quadrature::integrate(evan, bp_evan, opts);

  if (!rp.converged || !re.converged)
    fail(ErrorKind::NonConvergence, "plate k_perp quadrature did not reach the requested tolerance");

  PlateTraceResult out;
  out.propagating = rp.value;
  out.evanescent = re.value;
  out.value = free + rp.value + re.value;
  out.error = rp.error + re.error;
  out.evaluations = rp.evaluations + re.evaluations;
  return out;
}

PlateTraceResult im_g_trace_plate(double d, double k, cplx eps, double mu, double rel_tol) {
  if (!(mu > 0.0)) fail(ErrorKind::Domain, "permeability must be > 0");
  auto coeffs = [&](double kp) {
    const cplx kz = specfun::normal_wavenumber(k, kp);
    return FresnelPair{fresnel_rm(k, kz, kp, eps, mu), fresnel_rn(k, kz, kp, eps, mu)};
  };
  return im_g_trace_plate(d, k, coeffs, rel_tol);
}

}  // namespace pprad::greens
