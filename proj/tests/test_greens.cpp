#include <cmath>
#include <random>

#include <doctest.h>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"

using namespace pprad;
using namespace pprad::greens;

namespace {

const double pi = constants::pi;

double rel(const Mat3& a, const Mat3& b) { return (a - b).norm() / b.norm(); }

materials::DielectricModel eps_const(cplx e) { return materials::ConstantPermittivity{e}; }

// quasi-static image potential of a dielectric sphere at the origin, long double
long double qs_potential(const Vec3& a, const Vec3& b, long double R, std::complex<long double> eps, int part) {
  const long double ra = std::sqrt((long double)a.squaredNorm()), rb = std::sqrt((long double)b.squaredNorm());
  const long double c = ((long double)a.dot(b)) / (ra * rb);
  std::complex<long double> s = 0;
  long double p0 = 1, p1 = c, q = R * R * R / ((ra * rb) * (ra * rb));
  const long double step = R * R / (ra * rb);
  for (int l = 1; l < 200; ++l) {
    const long double l_ = l;
    s += (1.0L - eps) * l_ / (eps * l_ + l_ + 1.0L) * q * p1;
    q *= step;
    const long double p2 = ((2 * l_ + 1) * c * p1 - l_ * p0) / (l_ + 1);
    p0 = p1;
    p1 = p2;
  }
  s /= 4 * 3.14159265358979323846264338327950288L;
  return part == 0 ? s.real() : s.imag();
}

// -d/da_i d/db_j of the potential, central differences
Mat3 qs_dyad(const Vec3& a, const Vec3& b, double R, cplx eps) {
  Mat3 out;
  const long double h = 2e-11;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v[2];
      for (int part = 0; part < 2; ++part) {
        auto f = [&](int si, int sj) {
          Vec3 x = a, y = b;
          x[i] += si * (double)h;
          y[j] += sj * (double)h;
          return qs_potential(x, y, R, {eps.real(), eps.imag()}, part);
        };
        const long double d = (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4 * h * h);
        v[part] = -static_cast<double>(d);
      }
      out(i, j) = {v[0], v[1]};
    }
  return out;
}

}  // namespace

TEST_SUITE("greens") {

TEST_CASE("free dyad: trace and squared-norm identities") {
  for (double kd : {0.1, 1.0, 10.0, 0.999, 1.001}) {
    const double k = 1e6, d = kd / k;
    const Vec3 r1(0.1e-6, -0.2e-6, 0.3e-6), n = Vec3(1, 2, -2).normalized();
    const Mat3 g = g0(r1 + d * n, r1, k).value;
    double sq = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sq += std::norm(g(i, j));
    const double ref = (1.0 / (d * d) + 1.0 / (k * k * d * d * d * d) + 3.0 / (k * k * k * k * d * d * d * d * d * d)) /
                       (8 * pi * pi);
    CAPTURE(kd);
    CHECK(std::abs(sq / ref - 1.0) < 1e-12);
    CHECK(rel(g, g.transpose()) < 1e-15);
    CHECK(rel(g0(r1, r1 + d * n, k).value, g) < 1e-15);
  }
  CHECK(im_g0_trace(3.0) == doctest::Approx(3.0 / (2 * pi)).epsilon(1e-15));
}

TEST_CASE("Im tr G0 tends to k/2pi, Richardson extrapolated") {
  const double k = 1.0;
  auto f = [&](double d) { return g0(Vec3(d, 0, 0), Vec3::Zero(), k).value.trace().imag(); };
  // Im tr G0 = k/2pi + O(d^2)
  const double h = 1e-2;
  const double r1 = (4 * f(h / 2) - f(h)) / 3, r2 = (4 * f(h / 4) - f(h / 2)) / 3;
  const double rich = (16 * r2 - r1) / 15;
  CHECK(std::abs(rich / (k / (2 * pi)) - 1.0) < 1e-12);
}

TEST_CASE("free dyad near and far: closed form in long double") {
  for (double x : {1e-4, 0.3, 0.9, 1.1, 50.0}) {
    const double k = 2.0, d = x / k;
    const std::complex<long double> ix(0, x), e = std::exp(ix);
    const long double X = x;
    const auto A = e * (-1.0L + ix + X * X), B = e * (3.0L - 3.0L * ix - X * X);
    const long double pre = 1.0L / (4 * 3.14159265358979323846L * (long double)k * k * (long double)d * d * d);
    const Mat3 g = g0(Vec3(0, 0, d), Vec3::Zero(), k).value;
    CAPTURE(x);
    // near zero x the real part cancels catastrophically in the closed form; compare the imaginary part there
    CHECK(std::abs(g(0, 0).imag() - (double)(pre * A).imag()) < 1e-9 * std::abs((double)(pre * A).imag()));
    if (x > 0.2) {
      CHECK(std::abs(g(2, 2) - cplx((double)(pre * (A + B)).real(), (double)(pre * (A + B)).imag())) <
            1e-12 * std::abs(g(2, 2)));
    }
  }
  try {
    g0(Vec3::Zero(), Vec3::Zero(), 1.0);
    FAIL("coincident points accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoincidentPoint);
  }
  CHECK_THROWS(g0(Vec3(1, 0, 0), Vec3::Zero(), 0.0));
}

TEST_CASE("regular wave dyads sum to Im G0") {
  for (double k : {0.7, 3.0}) {
    const Vec3 r(0.3, 0.2, 0.5), rp(-0.1, 0.4, 0.2);
    Mat3 s = Mat3::Zero();
    for (int l = 1; l <= 40; ++l)
      for (auto P : {Polarization::M, Polarization::N}) s += regular_wave_dyad(l, P, k, r, rp);
    const Mat3 g = g0(r, rp, k).value;
    CHECK((s.real() - g.imag()).norm() < 1e-12 * g.imag().norm());
    CHECK(s.imag().norm() < 1e-12 * g.imag().norm());
  }
}

TEST_CASE("sphere: quasi-static limit matches the image series") {
  const double R = 1e-7, k = 1e3;
  for (cplx eps : {cplx(-3.0, 0.1), cplx(12.0, 0.5)}) {
    SphereBody s{R, eps_const(eps)};
    const Vec3 r1(0.2e-7, 0.5e-7, 2e-7), r2(0.3e-7, -0.4e-7, -1.7e-7);
    const Mat3 sc = (g_sphere(r2, r1, k, 1.0, s).value - g0(r2, r1, k).value) * (k * k);
    const Mat3 ref = qs_dyad(r2, r1, R, eps);
    CAPTURE(eps);
    CHECK(rel(sc, ref) < 1e-5);
  }
}

TEST_CASE("sphere: small sphere reduces to the point dipole, vanishing sphere to G0") {
  const cplx eps(3.0, 1.0);
  const double k = 1e6;
  const Vec3 r1(0.3e-7, 0.1e-7, 1.0e-7), r2(-0.5e-7, 0.2e-7, -0.9e-7);
  SphereBody s{1e-9, eps_const(eps)};
  const auto a = g_sphere(r2, r1, k, 1.0, s);
  const auto b = g_pp(r2, r1, k, Vec3::Zero(), materials::polarizability(eps, 1e-9));
  const auto f = g0(r2, r1, k);
  CHECK((a.value - b.value).norm() < 0.01 * (b.value - f.value).norm());
  s.radius = 1e-12;
  CHECK(rel(g_sphere(r2, r1, k, 1.0, s).value, f.value) < 1e-10);

  // self trace, sphere vs dipole sphere
  const double ts = SphereScattering({1e-9, eps_const(eps)}, r1, r1).im_trace(k, 1.0, {});
  const double td = im_trace(DipoleSphere{1e-9, eps_const(eps)}, r1, k, 1.0).value;
  CHECK(std::abs(ts - td) < 0.01 * std::abs(td - im_g0_trace(k)));
}

TEST_CASE("reciprocity G(r2, r1) = G(r1, r2)^T") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double R = 1e-6, k = 2e6;
  const std::vector<materials::DielectricModel> mats{eps_const({4.0, 0.3}), materials::gold_drude(),
                                                     materials::PerfectMirror{}, materials::silicon_carbide()};
  for (const auto& m : mats)
    for (int trial = 0; trial < 4; ++trial) {
      auto point = [&]() -> Vec3 {
        Vec3 v(u(rng), u(rng), u(rng));
        return v.normalized() * R * (1.05 + 0.5 * std::abs(u(rng)));
      };
      const Vec3 a = point(), b = point();
      SphereBody s{R, m};
      const double omega = k * constants::c;
      const Mat3 g21 = g_sphere(a, b, k, omega, s, {1e-12, 5000, 0}).value;
      const Mat3 g12 = g_sphere(b, a, k, omega, s, {1e-12, 5000, 0}).value;
      CHECK(rel(g21, g12.transpose()) < 1e-9);
    }
  const Vec3 a(1e-7, 2e-7, 0), b(-3e-7, 0, 1e-7), c0(0, 0, -2e-7);
  const Mat3 p = g_pp(a, b, 1e6, c0, {1e-24, 1e-25}).value, q = g_pp(b, a, 1e6, c0, {1e-24, 1e-25}).value;
  CHECK(rel(p, q.transpose()) < 1e-12);
}

TEST_CASE("partial sums converge to the adaptive value") {
  SphereBody s{1e-6, materials::gold_drude()};
  const Vec3 a(0, 0, 1.1e-6), b(0, 0, -1.1e-6);
  const double k = 3e5, omega = k * constants::c;
  SphereScattering ss(s, a, b);
  const auto full = ss.evaluate(k, omega, {1e-12, 5000, 0});
  const std::vector<int> grid{0, 10, 40, 200};
  const auto ps = ss.partial_sums(k, omega, grid);
  CHECK(rel(ps[0], g0(a, b, k).value) < 1e-14);
  CHECK(rel(ps[3], full.value) < 1e-10);
  CHECK(rel(ps[1], full.value) > 1e-3);
  CHECK_THROWS_AS(ss.evaluate(k, omega, {1e-12, 5, 0}), ConvergenceError);
}

TEST_CASE("geometry errors") {
  SphereBody s{1e-6, materials::gold_drude()};
  try {
    g_sphere(Vec3(0, 0, 0.5e-6), Vec3(0, 0, 2e-6), 1e6, 3e14, s);
    FAIL("point inside the sphere accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Geometry);
  }
  CHECK_THROWS(PairGreens(HalfSpace{materials::PerfectMirror{}}, Vec3(0, 0, 1), Vec3(0, 0, 2)));
  CHECK_THROWS(im_trace(HalfSpace{materials::PerfectMirror{}}, Vec3(0, 0, -1), 1.0, 1.0));
  CHECK_THROWS(im_trace(MirrorCavity{1.0}, Vec3(0, 0, 1.5), 1.0, 1.0));
  CHECK_THROWS(g_pp(Vec3(1, 0, 0), Vec3(0, 1, 0), 1.0, Vec3(1, 0, 0), 1.0));
}

TEST_CASE("Mie elements: unitarity, mirror, small sphere") {
  for (int l : {1, 2, 7, 30})
    for (double kR : {0.01, 1.0, 25.0}) {
      for (auto P : {Polarization::M, Polarization::N}) {
        const cplx t = mie_t(l, P, kR, 1.0, {5.0, 0.0}, 1.0);
        CHECK(std::abs(std::abs(1.0 + 2.0 * t) - 1.0) < 1e-12);
        const cplx tm = mie_t_mirror(l, P, kR);
        CHECK(std::abs(tm.real() + std::norm(tm)) < 1e-12 * std::max(1.0, std::abs(tm)));
        const cplx tl = mie_t(l, P, kR, 1.0, {5.0, 2.0}, 1.0);
        CHECK(tl.real() + std::norm(tl) < 1e-15);  // absorbing: loss
      }
    }
  const double kR = 1e-3;
  for (cplx eps : {cplx(3, 0), cplx(3, 1), materials::permittivity(materials::silicon_carbide(),
                                                                    materials::thermal_frequency(300.0))}) {
    const cplx ref = cplx(0, 2.0 / 3.0) * (eps - 1.0) / (eps + 2.0) * kR * kR * kR;
    const cplx t1n = mie_t(1, Polarization::N, 1.0, kR, eps, 1.0);
    CHECK(std::abs(t1n - ref) < 1e-5 * std::abs(ref));
  }
  CHECK_THROWS(mie_t(0, Polarization::N, 1.0, 1.0, 2.0, 1.0));
}

TEST_CASE("cavity elements and trace") {
  for (int l : {1, 3, 10})
    for (double kR : {0.5, 4.2, 20.0}) {
      for (auto P : {Polarization::M, Polarization::N}) {
        const cplx t = cavity_t_mirror(l, P, kR);
        CHECK(t.real() == -1.0);
        const cplx h = P == Polarization::M ? specfun::sph_hankel1(l, kR)
                                            : specfun::riccati_deriv(specfun::RadialKind::Hankel, l, kR);
        const cplx j = P == Polarization::M ? specfun::sph_bessel_j(l, kR)
                                            : specfun::riccati_deriv(specfun::RadialKind::Bessel, l, kR);
        CHECK(std::abs(t - (-h / j)) < 1e-9 * std::abs(t));
      }
    }
  // kR = pi zeroes j_0 and the first M resonance of l = 1 sits at kR ~ 4.4934
  try {
    cavity_t_mirror(1, Polarization::M, 4.493409457909064);
    FAIL("resonance accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resonance);
  }
  const double k = 1e6;
  for (double kR : {5.0, 20.0})
    for (double kr : {0.0, 0.5, 3.0}) {
      const Vec3 r = Vec3(0.3, 0.4, 0.5).normalized() * (kr / k);
      const double v = im_g_cavity_trace(r, k, MirrorCavity{kR / k});
      CHECK(std::abs(v) < 1e-10 * k / (2 * pi));
    }
}

TEST_CASE("plate: mirror closed form, quadrature and limits") {
  const double k = 1e6;
  for (double d : {1e-8, 3e-7, 2e-6, 1e-5}) {
    const auto mirror = im_g_trace_plate(d, k, [](double) { return FresnelPair{-1.0, 1.0}; }, 1e-12);
    CAPTURE(d);
    CHECK(std::abs(mirror.value - im_g_trace_plate_mirror(d, k)) < 1e-8 * im_g_trace_plate_mirror(d, k));
    const auto vac = im_g_trace_plate(d, k, 1.0, 1.0);
    CHECK(vac.value == doctest::Approx(k / (2 * pi)).epsilon(1e-12));
  }
  // far away the mirror trace tends to the free value
  CHECK(im_g_trace_plate_mirror(1.0, k) == doctest::Approx(k / (2 * pi)).epsilon(1e-5));
  // u -> 0: the bracket behaves as u^3 / 3 and the trace as (2/3) k / 2pi
  CHECK(mirror_image_bracket(1e-3) == doctest::Approx(1e-9 / 3).epsilon(1e-6));
  CHECK(im_g_trace_plate_mirror(1e-12, k) / (k / (2 * pi)) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  for (double u : {0.4999999, 0.5000001}) {
    const double direct = -std::sin(u) + u * std::cos(u) + 0.5 * u * u * std::sin(u);
    CHECK(mirror_image_bracket(u) == doctest::Approx(direct).epsilon(1e-9));
  }
  // eps -> infinity approaches the mirror from one side, monotonically
  const double d = 5e-7, target = im_g_trace_plate_mirror(d, k);
  double prev = INFINITY;
  for (double e : {1e2, 1e4, 1e6, 1e8}) {
    const double diff = std::abs(im_g_trace_plate(d, k, cplx(e, 0.1 * e), 1.0, 1e-12).value - target);
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 1e-3 * target);
  // index-matched half-space reflects nothing
  const auto none = im_g_trace_plate(d, k, cplx(1.0, 0.0), 1.0);
  CHECK(none.evanescent == 0.0);
  CHECK(std::abs(none.propagating) < 1e-12 * k / (2 * pi));
}

TEST_CASE("environment dispatch") {
  const Vec3 r(0, 0, 1e-6);
  CHECK(im_trace(Vacuum{}, r, 2.0, 1.0).value == doctest::Approx(1.0 / pi));
  CHECK(std::string(environment_name(MirrorCavity{1.0})) == "cavity");
  CHECK(surface_distance(HalfSpace{materials::gold_drude()}, r) == 1e-6);
  CHECK(std::isinf(surface_distance(Vacuum{}, r)));
  const auto g = evaluate(Vacuum{}, r, Vec3::Zero(), 1e6, 1.0);
  CHECK(rel(g.value, g0(r, Vec3::Zero(), 1e6).value) == 0.0);
}

}  // TEST_SUITE
