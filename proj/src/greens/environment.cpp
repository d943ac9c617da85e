#include <cmath>
#include <limits>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"

namespace pprad::greens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMargin = 1e-12;

cplx dipole_alpha(const DipoleSphere& s, double omega) {
  if (materials::is_mirror(s.material)) return {s.radius * s.radius * s.radius, 0.0};
  return materials::polarizability(materials::permittivity(s.material, omega), s.radius);
}

}  // namespace

const char* environment_name(const Environment& env) {
  return std::visit(overloaded{[](const Vacuum&) { return "vacuum"; },
                               [](const SphereBody&) { return "sphere"; },
                               [](const DipoleSphere&) { return "dipole_sphere"; },
                               [](const HalfSpace&) { return "plate"; },
                               [](const MirrorCavity&) { return "cavity"; }},
                    env);
}

double surface_distance(const Environment& env, const Vec3& r) {
  return std::visit(overloaded{[](const Vacuum&) { return std::numeric_limits<double>::infinity(); },
                               [&](const SphereBody& s) { return (r - s.center).norm() - s.radius; },
                               [&](const DipoleSphere& s) { return (r - s.center).norm() - s.radius; },
                               [&](const HalfSpace&) { return r.z(); },
                               [&](const MirrorCavity& c) { return c.radius - (r - c.center).norm(); }},
                    env);
}

void check_point(const Environment& env, const Vec3& r) {
  if (!r.allFinite()) fail(ErrorKind::Geometry, "non-finite position");
  std::visit(overloaded{[](const Vacuum&) {},
                        [&](const SphereBody& s) {
                          if (!((r - s.center).norm() > s.radius * (1.0 + kMargin)))
                            fail(ErrorKind::Geometry, "point inside or on the sphere");
                        },
                        [&](const DipoleSphere& s) {
                          if (!((r - s.center).norm() > s.radius * (1.0 + kMargin)))
                            fail(ErrorKind::Geometry, "point inside or on the sphere");
                        },
                        [&](const HalfSpace&) {
                          if (!(r.z() > 0.0)) fail(ErrorKind::Geometry, "point not above the plate (z > 0)");
                        },
                        [&](const MirrorCavity& c) {
                          if (!((r - c.center).norm() < c.radius * (1.0 - kMargin)))
                            fail(ErrorKind::Geometry, "point not inside the cavity");
                        }},
             env);
}

PairGreens::PairGreens(Environment env, const Vec3& r2, const Vec3& r1) : env_(std::move(env)), r2_(r2), r1_(r1) {
  check_point(env_, r2_);
  check_point(env_, r1_);
  if (r2_ == r1_) fail(ErrorKind::CoincidentPoint, "Green's function needs distinct points");
  if (std::holds_alternative<HalfSpace>(env_) || std::holds_alternative<MirrorCavity>(env_))
    fail(ErrorKind::Unsupported,
         std::string("two-point Green's function not implemented for the ") + environment_name(env_) +
             " environment");
  if (const auto* s = std::get_if<SphereBody>(&env_)) sphere_ = std::make_unique<SphereScattering>(*s, r2_, r1_);
}

GreensTensor PairGreens::operator()(double k, double omega, const MultipolePolicy& policy) const {
  if (sphere_) return sphere_->evaluate(k, omega, policy);
  if (const auto* d = std::get_if<DipoleSphere>(&env_)) return g_pp(r2_, r1_, k, d->center, dipole_alpha(*d, omega));
  return g0(r2_, r1_, k);
}

std::vector<Mat3> PairGreens::partial_sums(double k, double omega, std::span<const int> l_grid) const {
  if (!sphere_) fail(ErrorKind::Unsupported, "multipole partial sums need a sphere environment");
  return sphere_->partial_sums(k, omega, l_grid);
}

SelfTrace::SelfTrace(Environment env, const Vec3& r) : env_(std::move(env)), r_(r) {
  check_point(env_, r_);
  if (const auto* s = std::get_if<SphereBody>(&env_)) sphere_ = std::make_unique<SphereScattering>(*s, r_, r_);
}

TraceValue SelfTrace::operator()(double k, double omega, const MultipolePolicy& policy) const {
  if (sphere_) {
    int l = 0;
    const double v = sphere_->im_trace(k, omega, policy, &l);
    return {v, l};
  }
  return std::visit(
      overloaded{[&](const Vacuum&) { return TraceValue{im_g0_trace(k), 0}; },
                 [&](const SphereBody&) -> TraceValue { fail(ErrorKind::Domain, "unreachable"); },
                 [&](const DipoleSphere& d) {
                   if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
                   const Mat3 a = g0(r_, d.center, k).value;
                   const Mat3 scat = 4.0 * constants::pi * k * k * dipole_alpha(d, omega) * (a * a.transpose());
                   return TraceValue{im_g0_trace(k) + scat.trace().imag(), 0};
                 },
                 [&](const HalfSpace& h) {
                   if (materials::is_mirror(h.material)) return TraceValue{im_g_trace_plate_mirror(r_.z(), k), 0};
                   const cplx eps = materials::permittivity(h.material, omega);
                   return TraceValue{im_g_trace_plate(r_.z(), k, eps, h.mu, policy.rel_tol).value, 0};
                 },
                 [&](const MirrorCavity& c) {
                   int l = 0;
                   const double v = im_g_cavity_trace(r_, k, c, policy, &l);
                   return TraceValue{v, l};
                 }},
      env_);
}

GreensTensor evaluate(const Environment& env, const Vec3& r2, const Vec3& r1, double k, double omega,
                      const MultipolePolicy& policy) {
  return PairGreens(env, r2, r1)(k, omega, policy);
}

TraceValue im_trace(const Environment& env, const Vec3& r, double k, double omega, const MultipolePolicy& policy) {
  return SelfTrace(env, r)(k, omega, policy);
}

}  // namespace pprad::greens
