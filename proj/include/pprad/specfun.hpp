#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pprad/scaled.hpp"

namespace pprad::specfun {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// Highest multipole order any routine here accepts.
inline constexpr int kOrderCap = 10000;

// ---------------------------------------------------------------------------
// Spherical Bessel and Hankel functions
// ---------------------------------------------------------------------------

/// j_l(z) for complex z by normalized downward (Miller) recurrence.
cplx sph_bessel_j(int l, cplx z);
Scaled sph_bessel_j_scaled(int l, cplx z);
/// j_0 .. j_lmax in scaled form.
std::vector<Scaled> sph_bessel_j_sequence(int l_max, cplx z);

/// y_l(x), real x > 0, by upward recurrence.
double sph_bessel_y(int l, double x);
Scaled sph_bessel_y_scaled(int l, double x);

/// h_l(x) = j_l(x) + i y_l(x), real x > 0.
cplx sph_hankel1(int l, double x);
Scaled sph_hankel1_scaled(int l, double x);

enum class RadialKind { Bessel, Neumann, Hankel };

/// d/dx [x f_l(x)] = x f_{l-1}(x) - l f_l(x).
cplx riccati_deriv(RadialKind kind, int l, double x);

/// f_l(x) and d/dx[x f_l(x)] for l = 0..l_max at one real argument.
/// Bessel accepts x = 0; Neumann and Hankel need x > 0.
struct RadialTable {
  std::vector<Scaled> value;
  std::vector<Scaled> riccati;
};
RadialTable radial_table(RadialKind kind, int l_max, double x);

/// (z j_l(z))' / j_l(z) for l = 0..l_max, from the downward recurrence of
/// the Riccati logarithmic derivative. Never forms j_l itself.
std::vector<cplx> bessel_log_derivative(int l_max, cplx z);

// ---------------------------------------------------------------------------
// Spherical harmonics
// ---------------------------------------------------------------------------

/// Y_l^m with the Condon-Shortley phase, its theta derivative and
/// (m / sin theta) Y_l^m. The last two stay finite on the polar axis.
struct HarmonicValue {
  cplx value;
  cplx d_theta;
  cplx m_over_sin;
};

HarmonicValue sph_harmonic(int l, int m, double theta, double phi);

/// Normalized associated Legendre data for one fixed m and l = m..l_max:
///   p[l - m]    = Ybar_l^m(theta)            (Y without e^{i m phi})
///   dp[l - m]   = d/dtheta Ybar_l^m
///   mq[l - m]   = m Ybar_l^m / sin(theta)
/// Computed from recurrences in cos(theta) with a scaled seed, so high
/// orders neither underflow prematurely nor divide by sin(theta).
struct LegendreColumn {
  int m = 0;
  std::vector<double> p, dp, mq;
};

class LegendreColumns {
 public:
  LegendreColumns(int l_max, double theta);
  /// Column m (0 <= m <= l_max). Columns must be requested in increasing m.
  const LegendreColumn& next();
  int l_max() const { return l_max_; }

 private:
  int l_max_;
  double cos_t_, sin_t_;
  int m_next_ = 0;
  // seed pi_m^m = Ybar_m^m / sin(theta) as mantissa * 2^exp
  double seed_mant_;
  long seed_exp_ = 0;
  LegendreColumn col_;
  std::vector<double> p1_;  // Ybar_l^1 needed for the m = 0 derivative
};

/// Dense table of all (l, m) for moderate l_max.
class HarmonicTable {
 public:
  HarmonicTable(int l_max, double theta, double phi);
  HarmonicValue operator()(int l, int m) const;
  int l_max() const { return l_max_; }

 private:
  static std::size_t index(int l, int m) { return static_cast<std::size_t>(l) * (l + 1) / 2 + m; }
  int l_max_;
  double phi_;
  std::vector<double> p_, dp_, mq_;
};

// ---------------------------------------------------------------------------
// Vector spherical waves
// ---------------------------------------------------------------------------

enum class Polarization { M, N };
enum class Regularity { Regular, Outgoing };

struct WaveIndex {
  Polarization pol;
  int l;
  int m;

  /// Validates l >= 1 and |m| <= l.
  static WaveIndex make(Polarization pol, int l, int m);
};

struct SphericalPoint {
  double r, theta, phi;
  Vec3 r_hat, theta_hat, phi_hat;
};
SphericalPoint to_spherical(const Vec3& r);

/// Angular parts of the (l, m) waves at one point, Cartesian components:
///   radial = r_hat Y,
///   x      = theta_hat (i m / sin) Y - phi_hat dY/dtheta     (M waves)
///   z      = theta_hat dY/dtheta + phi_hat (i m / sin) Y     (N waves)
struct VectorHarmonics {
  CVec3 radial, x, z;
};

VectorHarmonics vector_harmonics(const SphericalPoint& pt, const HarmonicValue& y);

/// sqrt((-1)^m k), the wave normalization; the product over m and -m is (-1)^m k.
cplx wave_prefactor(int m, double k);

/// E^{reg/out}_{Plm}(r) in Cartesian components.
CVec3 spherical_wave(const WaveIndex& idx, Regularity reg, double k, const Vec3& r);

enum class PlaneWave { M, NPlus, NMinus };

/// k_z = sqrt(k^2 - k_perp^2) on the branch with Im k_z >= 0.
cplx normal_wavenumber(double k, double k_perp);

/// M and N^{+/-} plane waves with the e^{i k.r} phase.
CVec3 plane_wave(PlaneWave kind, const Eigen::Vector2d& k_perp, double k,
                 const Eigen::Vector2d& x_perp, double z);

}  // namespace pprad::specfun
