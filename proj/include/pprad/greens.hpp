#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pprad/errors.hpp"
#include "pprad/materials.hpp"
#include "pprad/scaled.hpp"
#include "pprad/specfun.hpp"

namespace pprad::greens {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3cd;
using materials::DielectricModel;
using specfun::Polarization;

/// Dyadic Green's function value at a point pair, m^-1.
struct GreensTensor {
  Mat3 value = Mat3::Zero();
  int l_max = 0;               // highest multipole order summed (0: closed form)
  double tail_estimate = 0.0;  // Frobenius-norm bound on the truncated remainder
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, GreensTensor partial)
      : Error(ErrorKind::NonConvergence, what), partial_(std::move(partial)) {}
  const GreensTensor& partial() const { return partial_; }

 private:
  GreensTensor partial_;
};

/// Multipole truncation. Adaptive by default: stop once three consecutive
/// l-blocks each add less than rel_tol of the running Frobenius norm.
/// l_fixed > 0 sums exactly l = 1..l_fixed instead.
struct MultipolePolicy {
  double rel_tol = 1e-8;
  int l_cap = 5000;
  int l_fixed = 0;
};

// ---------------------------------------------------------------------------
// Environments
// ---------------------------------------------------------------------------

struct Vacuum {};

/// Homogeneous sphere, evaluation points outside.
struct SphereBody {
  double radius;
  DielectricModel material;
  double mu = 1.0;
  Vec3 center = Vec3::Zero();
};

/// A small sphere replaced by a point dipole at its center.
struct DipoleSphere {
  double radius;
  DielectricModel material;
  Vec3 center = Vec3::Zero();
};

/// Half-space z <= 0; evaluation points at z > 0.
struct HalfSpace {
  DielectricModel material;
  double mu = 1.0;
};

/// Spherical cavity with perfectly reflecting walls; points inside.
struct MirrorCavity {
  double radius;
  Vec3 center = Vec3::Zero();
};

using Environment = std::variant<Vacuum, SphereBody, DipoleSphere, HalfSpace, MirrorCavity>;

const char* environment_name(const Environment& env);

/// Throws Geometry unless r is in the region where the environment's Green's
/// function is defined (1e-12 R margin for spheres and cavities).
void check_point(const Environment& env, const Vec3& r);

/// Distance from r to the environment body's surface (inf for vacuum).
double surface_distance(const Environment& env, const Vec3& r);

// ---------------------------------------------------------------------------
// Free space
// ---------------------------------------------------------------------------

/// Closed-form free dyad for r != r'. The coincident delta term is never
/// included.
GreensTensor g0(const Vec3& r, const Vec3& rp, double k);

/// sum_i Im G0_ii(r, r) = k / (2 pi).
double im_g0_trace(double k);

// ---------------------------------------------------------------------------
// Sphere
// ---------------------------------------------------------------------------

struct MieElement {
  int l;
  cplx t_m, t_n;
};

/// Mie element of a homogeneous sphere, in ratio form.
cplx mie_t(int l, Polarization pol, double k, double radius, cplx eps, double mu);
/// Perfect-conductor limits -j_l/h_l and -(x j_l)'/(x h_l)'.
cplx mie_t_mirror(int l, Polarization pol, double kR);

/// Mie elements l = 1..l_max in scaled form (index l; index 0 unused).
/// A mirror material uses the closed forms.
struct MieTable {
  std::vector<Scaled> t_m, t_n;
};
MieTable mie_table(int l_max, double k, const SphereBody& sphere, double omega);

/// sum over m of the angular dyads of order l for a point pair:
///   mm = sum_m (-1)^m X_lm(r) (x) X_l,-m(r')   (M waves)
///   rr, rz, zr, zz likewise from the radial and z parts (N waves).
struct AngularBlock {
  Mat3 mm, rr, rz, zr, zz;
};
/// Blocks for l = 0..l_max (index 0 is zero). Points relative to the origin.
std::vector<AngularBlock> angular_blocks(int l_max, const Vec3& r, const Vec3& rp);

/// Green's function outside a sphere for a fixed point pair. The
/// frequency-independent angular sums over m are cached and extended on
/// demand; evaluation is thread-safe.
class SphereScattering {
 public:
  SphereScattering(SphereBody sphere, const Vec3& r, const Vec3& rp);

  /// G0 plus the adaptively truncated scattered sum. omega selects eps(omega);
  /// it must equal k c for physical use (tests may pass any positive value
  /// together with a constant material).
  GreensTensor evaluate(double k, double omega, const MultipolePolicy& policy = {}) const;

  /// Full Green's function truncated at each order in l_grid (0: G0 only).
  std::vector<Mat3> partial_sums(double k, double omega, std::span<const int> l_grid) const;

  /// sum_i Im G_ii(r, r); requires r == r'.
  double im_trace(double k, double omega, const MultipolePolicy& policy, int* l_used = nullptr) const;

  const SphereBody& sphere() const { return sphere_; }

 private:
  struct Radial;
  std::shared_ptr<const std::vector<AngularBlock>> blocks(int l_max) const;
  Radial radial(int l_max, double k, double omega) const;

  SphereBody sphere_;
  Vec3 r_, rp_;  // relative to the center
  bool coincident_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const std::vector<AngularBlock>> blocks_;
};

GreensTensor g_sphere(const Vec3& r, const Vec3& rp, double k, double omega, const SphereBody& sphere,
                      const MultipolePolicy& policy = {});

/// G0 + 4 pi k^2 alpha G0(r, r0) G0(r0, r').
GreensTensor g_pp(const Vec3& r, const Vec3& rp, double k, const Vec3& r0, cplx alpha);

/// Regular-wave dyad sum_m E^reg_{Plm}(r) (x) E^reg_{Pl,-m}(r').
Mat3 regular_wave_dyad(int l, Polarization pol, double k, const Vec3& r, const Vec3& rp);

// ---------------------------------------------------------------------------
// Plate
// ---------------------------------------------------------------------------

/// -sin u + u cos u + (u^2/2) sin u, series-evaluated for small u.
double mirror_image_bracket(double u);

/// Closed form of sum_i Im G_ii at distance d from a mirror half-space.
double im_g_trace_plate_mirror(double d, double k);

cplx fresnel_rm(double k, cplx kz, double k_perp, cplx eps, double mu);
cplx fresnel_rn(double k, cplx kz, double k_perp, cplx eps, double mu);

struct FresnelPair {
  cplx r_m, r_n;
};

struct PlateTraceResult {
  double value;           // full trace, including k / 2 pi
  double propagating;     // reflected part, k_perp < k
  double evanescent;      // reflected part, k_perp > k
  double error;
  int evaluations;
};

/// sum_i Im G_ii(r, r) at height d over a half-space, by quadrature over
/// k_perp with the given reflection coefficients.
PlateTraceResult im_g_trace_plate(double d, double k, const std::function<FresnelPair(double k_perp)>& coeffs,
                                  double rel_tol = 1e-10);
/// Fresnel coefficients of (eps, mu).
PlateTraceResult im_g_trace_plate(double d, double k, cplx eps, double mu, double rel_tol = 1e-10);

// ---------------------------------------------------------------------------
// Mirror cavity
// ---------------------------------------------------------------------------

/// Cavity elements -h_l/j_l and -(x h_l)'/(x j_l)'.
cplx cavity_t_mirror(int l, Polarization pol, double kR);

/// sum_i Im G_ii(r1, r1) inside a mirror cavity: the free trace plus the
/// regular-wave sum weighted by Re T = -1.
double im_g_cavity_trace(const Vec3& r1, double k, const MirrorCavity& cavity, const MultipolePolicy& policy = {},
                         int* l_used = nullptr);

// ---------------------------------------------------------------------------
// Environment dispatch
// ---------------------------------------------------------------------------

/// G(r2, r1) of the environment. Plates and cavities are not supported for
/// distinct points.
GreensTensor evaluate(const Environment& env, const Vec3& r2, const Vec3& r1, double k, double omega,
                      const MultipolePolicy& policy = {});

struct TraceValue {
  double value;
  int l_max;
};

/// G(r2, r1) for a fixed pair, reusing frequency-independent work across
/// calls. Thread-safe.
class PairGreens {
 public:
  PairGreens(Environment env, const Vec3& r2, const Vec3& r1);
  GreensTensor operator()(double k, double omega, const MultipolePolicy& policy = {}) const;
  std::vector<Mat3> partial_sums(double k, double omega, std::span<const int> l_grid) const;

 private:
  Environment env_;
  Vec3 r2_, r1_;
  std::unique_ptr<SphereScattering> sphere_;
};

/// sum_i Im G_ii(r, r) for a fixed point. Thread-safe.
class SelfTrace {
 public:
  SelfTrace(Environment env, const Vec3& r);
  TraceValue operator()(double k, double omega, const MultipolePolicy& policy = {}) const;

 private:
  Environment env_;
  Vec3 r_;
  std::unique_ptr<SphereScattering> sphere_;
};

/// sum_i Im G_ii(r, r) of the environment.
TraceValue im_trace(const Environment& env, const Vec3& r, double k, double omega,
                    const MultipolePolicy& policy = {});

}  // namespace pprad::greens
