#include <algorithm>
#include <cmath>
#include <limits>

#include "detail.hpp"
#include "pprad/constants.hpp"

namespace pprad::transport {

namespace detail {

std::vector<std::pair<double, double>> windows_for(std::initializer_list<const Particle*> particles,
                                                   const Environment& env) {
  std::vector<std::pair<double, double>> out;
  auto add = [&](const materials::DielectricModel& m) {
    for (const auto& w : materials::resonance_windows(m)) out.push_back(w);
  };
  for (const Particle* p : particles) add(p->material);
  if (const auto* s = std::get_if<greens::SphereBody>(&env)) add(s->material);
  if (const auto* s = std::get_if<greens::DipoleSphere>(&env)) add(s->material);
  if (const auto* h = std::get_if<greens::HalfSpace>(&env)) add(h->material);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> x_breakpoints(double temperature, const std::vector<std::pair<double, double>>& windows,
                                  const QuadratureConfig& q) {
  const double scale = constants::k_B * temperature / constants::hbar;
  std::vector<double> bp{q.x_min, q.x_max};
  for (double x : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0})
    if (x > q.x_min && x < q.x_max) bp.push_back(x);
  for (const auto& [wa, wb] : windows) {
    const double xa = std::max(q.x_min, wa / scale), xb = std::min(q.x_max, wb / scale);
    if (!(xb > xa)) continue;
    const int n = std::max(1, q.window_panels);
    for (int i = 0; i <= n; ++i) bp.push_back(xa + (xb - xa) * i / n);
  }
  std::sort(bp.begin(), bp.end());
  std::vector<double> out;
  for (double x : bp)
    if (out.empty() || x > out.back() * (1.0 + 1e-12)) out.push_back(x);
  if (out.back() < q.x_max) out.back() = q.x_max;
  return out;
}

quadrature::Result integrate_omega(const std::function<double(double)>& f, double temperature,
                                   const std::vector<std::pair<double, double>>& windows,
                                   const QuadratureConfig& q, double abs_tol) {
  validate(q);
  if (!(temperature > 0.0)) fail(ErrorKind::Domain, "temperature must be > 0");
  const double scale = constants::k_B * temperature / constants::hbar;
  quadrature::Options opts;
  opts.rel_tol = q.rel_tol;
  opts.abs_tol = abs_tol;
  opts.max_panels = q.max_panels;
  return quadrature::integrate([&](double x) { return scale * f(x * scale); }, x_breakpoints(temperature, windows, q),
                               opts);
}

void require_dipole(const Particle& p, std::vector<double> distances) {
  distances.erase(std::remove_if(distances.begin(), distances.end(), [](double d) { return !std::isfinite(d); }),
                  distances.end());
  const auto report = materials::dipole_validity(p, distances);
  if (report.overall != materials::Verdict::Fail) return;
  for (const auto& c : report.checks)
    if (c.verdict == materials::Verdict::Fail)
      fail(ErrorKind::Domain, "dipole approximation not valid: " + c.name + " = " + std::to_string(c.ratio));
}

double im_alpha(const Particle& p, double omega) {
  return materials::polarizability(materials::permittivity(p.material, omega), p.radius).imag();
}

}  // namespace detail

void validate(const QuadratureConfig& q) {
  if (!(q.x_min > 0.0) || !(q.x_max > q.x_min)) fail(ErrorKind::Config, "quadrature range needs 0 < x_min < x_max");
  if (!(q.rel_tol > 0.0) || q.rel_tol > 1e-2) fail(ErrorKind::Config, "quadrature tolerance must be in (0, 1e-2]");
  if (q.window_panels < 1 || q.max_panels < 1) fail(ErrorKind::Config, "panel counts must be >= 1");
  for (const auto& [a, b] : q.windows)
    if (!(a > 0.0) || !(b > a)) fail(ErrorKind::Config, "refinement windows need 0 < lo < hi");
}

double hr_kernel(double omega, const Particle& p, const Environment& env, const MultipolePolicy& policy) {
  materials::validate(p);
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "angular frequency must be > 0");
  detail::require_dipole(p, {greens::surface_distance(env, p.position)});
  const double k = omega / constants::c;
  const double trace = greens::im_trace(env, p.position, k, omega, policy).value;
  return 8.0 / (constants::c * constants::c) * omega * omega * materials::planck_weight(omega, p.temperature) *
         detail::im_alpha(p, omega) * trace;
}

double ht_kernel(double omega, const Particle& p1, const Particle& p2, const Environment& env,
                 const MultipolePolicy& policy) {
  materials::validate(p1);
  materials::validate(p2);
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "angular frequency must be > 0");
  const double d = (p2.position - p1.position).norm();
  detail::require_dipole(p1, {greens::surface_distance(env, p1.position), d});
  detail::require_dipole(p2, {greens::surface_distance(env, p2.position), d});
  const double k = omega / constants::c;
  const double g2 = greens::evaluate(env, p2.position, p1.position, k, omega, policy).value.squaredNorm();
  const double c2 = constants::c * constants::c;
  return 32.0 * constants::pi / (c2 * c2) * std::pow(omega, 4) * materials::planck_weight(omega, p1.temperature) *
         detail::im_alpha(p1, omega) * detail::im_alpha(p2, omega) * g2;
}

}  // namespace pprad::transport
