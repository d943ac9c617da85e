#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "pprad/constants.hpp"

namespace pprad::transport {

namespace {

using constants::c;
using constants::pi;

TransferResult finish(const quadrature::Result& r, double volume_factor, int max_l, const char* what) {
  TransferResult out;
  out.power = r.value;
  out.normalized = r.value / volume_factor;
  out.error = r.error;
  out.max_l = max_l;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  if (!r.converged) throw AccuracyError(std::string(what) + ": frequency quadrature tolerance not met", out);
  return out;
}

double vacuum_hr_integrand(double omega, const Particle& p) {
  return 4.0 * omega * omega * omega / (pi * c * c * c) * materials::planck_weight(omega, p.temperature) *
         detail::im_alpha(p, omega);
}

}  // namespace

TransferResult hr_vacuum(const Particle& p, const QuadratureConfig& q) {
  materials::validate(p);
  detail::require_dipole(p, {});
  const auto r = detail::integrate_omega([&](double w) { return vacuum_hr_integrand(w, p); }, p.temperature,
                                         detail::windows_for({&p}, greens::Vacuum{}), q, 0.0);
  return finish(r, p.volume(), 0, "hr_vacuum");
}

TransferResult hr_mirror_plate(const Particle& p, double d, const QuadratureConfig& q) {
  materials::validate(p);
  if (!(d > 0.0)) fail(ErrorKind::Domain, "plate distance must be > 0");
  detail::require_dipole(p, {d});
  auto f = [&](double w) {
    const double image = materials::planck_weight(w, p.temperature) * detail::im_alpha(p, w) *
                         greens::mirror_image_bracket(2.0 * w * d / c) / (pi * d * d * d);
    return vacuum_hr_integrand(w, p) - image;
  };
  const auto r = detail::integrate_omega(f, p.temperature, detail::windows_for({&p}, greens::Vacuum{}), q, 0.0);
  return finish(r, p.volume(), 0, "hr_mirror_plate");
}

TransferResult hr(const Particle& p, const Environment& env, const QuadratureConfig& q,
                  const MultipolePolicy& policy) {
  materials::validate(p);
  detail::require_dipole(p, {greens::surface_distance(env, p.position)});
  const greens::SelfTrace trace(env, p.position);
  // absolute floor well below the vacuum result, for environments that cancel it
  const double floor = q.rel_tol * 1e-6 * hr_vacuum(p, q).power;
  int max_l = 0;
  auto f = [&](double w) {
    const auto t = trace(w / c, w, policy);
    max_l = std::max(max_l, t.l_max);
    return 8.0 / (c * c) * w * w * materials::planck_weight(w, p.temperature) * detail::im_alpha(p, w) * t.value;
  };
  const auto r = detail::integrate_omega(f, p.temperature, detail::windows_for({&p}, env), q, floor);
  return finish(r, p.volume(), max_l, "hr");
}

TransferResult ht_vacuum(const Particle& p1, const Particle& p2, const QuadratureConfig& q) {
  materials::validate(p1);
  materials::validate(p2);
  const double d = (p2.position - p1.position).norm();
  if (!(d > 0.0)) fail(ErrorKind::CoincidentPoint, "particles at the same position");
  detail::require_dipole(p1, {d});
  detail::require_dipole(p2, {d});
  auto f = [&](double w) {
    const double cw = c / w;
    const double bracket = 1.0 / (d * d) + cw * cw / std::pow(d, 4) + 3.0 * std::pow(cw, 4) / std::pow(d, 6);
    return 4.0 / (pi * std::pow(c, 4)) * std::pow(w, 4) * materials::planck_weight(w, p1.temperature) *
           detail::im_alpha(p1, w) * detail::im_alpha(p2, w) * bracket;
  };
  const auto r =
      detail::integrate_omega(f, p1.temperature, detail::windows_for({&p1, &p2}, greens::Vacuum{}), q, 0.0);
  return finish(r, p1.volume() * p2.volume(), 0, "ht_vacuum");
}

TransferResult ht(const Particle& p1, const Particle& p2, const Environment& env, const QuadratureConfig& q,
                  const MultipolePolicy& policy) {
  materials::validate(p1);
  materials::validate(p2);
  const double d = (p2.position - p1.position).norm();
  detail::require_dipole(p1, {greens::surface_distance(env, p1.position), d});
  detail::require_dipole(p2, {greens::surface_distance(env, p2.position), d});
  const greens::PairGreens green(env, p2.position, p1.position);
  const double floor = q.rel_tol * 1e-6 * ht_vacuum(p1, p2, q).power;
  int max_l = 0;
  auto f = [&](double w) {
    const auto g = green(w / c, w, policy);
    max_l = std::max(max_l, g.l_max);
    return 32.0 * pi / std::pow(c, 4) * std::pow(w, 4) * materials::planck_weight(w, p1.temperature) *
           detail::im_alpha(p1, w) * detail::im_alpha(p2, w) * g.value.squaredNorm();
  };
  const auto r = detail::integrate_omega(f, p1.temperature, detail::windows_for({&p1, &p2}, env), q, floor);
  return finish(r, p1.volume() * p2.volume(), max_l, "ht");
}

double net_ht(const Particle& p1, const Particle& p2, const Environment& env, const QuadratureConfig& q,
              const MultipolePolicy& policy) {
  Particle reverse = p1;
  reverse.temperature = p2.temperature;
  return ht(p1, p2, env, q, policy).power - ht(reverse, p2, env, q, policy).power;
}

double total_absorption(std::span<const Particle> particles, std::size_t target, const Environment& env,
                        double t_env, const QuadratureConfig& q, const MultipolePolicy& policy) {
  if (target >= particles.size()) fail(ErrorKind::Domain, "target index out of range");
  if (!(t_env > 0.0)) fail(ErrorKind::Domain, "environment temperature must be > 0");
  quadrature::CompensatedSum sum;
  for (std::size_t a = 0; a < particles.size(); ++a) {
    Particle at_env = particles[a];
    at_env.temperature = t_env;
    if (a == target) {
      sum.add(hr(particles[a], env, q, policy).power);
      sum.add(-hr(at_env, env, q, policy).power);
    } else {
      sum.add(ht(particles[a], particles[target], env, q, policy).power);
      sum.add(-ht(at_env, particles[target], env, q, policy).power);
    }
  }
  return sum.value();
}

}  // namespace pprad::transport
