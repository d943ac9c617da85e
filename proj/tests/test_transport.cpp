#include <cmath>
#include <random>

#include <doctest.h>

#include "pprad/constants.hpp"
#include "pprad/transport.hpp"

using namespace pprad;
using namespace pprad::transport;
using greens::Vec3;

namespace {

Particle sic(double radius, const Vec3& at, double T = 300.0) {
  return {materials::silicon_carbide(), radius, at, T};
}

QuadratureConfig tol(double rel, int max_panels = 20000) {
  QuadratureConfig q;
  q.rel_tol = rel;
  q.max_panels = max_panels;
  return q;
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("vacuum kernel route equals the closed-form quadrature") {
  const auto p = sic(1e-9, Vec3::Zero());
  const auto a = hr(p, greens::Vacuum{}, tol(1e-11));
  const auto b = hr_vacuum(p, tol(1e-11));
  CHECK(std::abs(a.power / b.power - 1.0) < 1e-8);
  CHECK(a.normalized == doctest::Approx(a.power / p.volume()));
  for (double d : {5e-7, 1e-5}) {
    const auto q = sic(1e-9, Vec3(0, 0, d));
    const auto x = ht(p, q, greens::Vacuum{}, tol(1e-11));
    const auto y = ht_vacuum(p, q, tol(1e-11));
    CHECK(std::abs(x.power / y.power - 1.0) < 1e-8);
  }
}

TEST_CASE("kernel spot values") {
  // vacuum HR kernel against 4 w^3 Theta Im alpha / (pi c^3)
  const auto p = sic(1e-9, Vec3::Zero());
  const double w = 1.6e14, c = constants::c;
  const double im_a = materials::polarizability(materials::permittivity(p.material, w), p.radius).imag();
  const double ref = 4 * w * w * w * materials::planck_weight(w, 300.0) * im_a / (constants::pi * c * c * c);
  CHECK(hr_kernel(w, p, greens::Vacuum{}) == doctest::Approx(ref).epsilon(1e-13));
  // the mirror plate kernel at small distance drops to 2/3
  auto q = p;
  q.position = Vec3(0, 0, 1e-12);
  q.radius = 1e-14;
  CHECK(hr_kernel(w, q, greens::HalfSpace{materials::PerfectMirror{}}) / hr_kernel(w, q, greens::Vacuum{}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("R^6 scaling and temperature monotonicity") {
  const auto a = sic(1e-9, Vec3::Zero()), b = sic(1e-9, Vec3(0, 0, 1e-6));
  auto a2 = a, b2 = b;
  a2.radius = b2.radius = 2e-9;
  const double r = ht_vacuum(a2, b2).power / ht_vacuum(a, b).power;
  CHECK(r == doctest::Approx(64.0).epsilon(1e-9));
  auto hot = a;
  hot.temperature = 350.0;
  CHECK(hr_vacuum(hot).power > hr_vacuum(a).power);
}

TEST_CASE("positivity and swap symmetry on random configurations") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), lr(std::log(3e-8), std::log(3e-7));
  for (int trial = 0; trial < 8; ++trial) {
    const double R = std::exp(lr(rng));
    auto around = [&]() -> Vec3 { return Vec3(u(rng), u(rng), u(rng)).normalized() * (R + 1e-7 * (1 + std::abs(u(rng)))); };
    const auto p1 = sic(5e-9, around()), p2 = sic(5e-9, around());
    greens::Environment env = greens::SphereBody{R, trial % 2 ? materials::DielectricModel{materials::gold_drude()}
                                                               : materials::DielectricModel{materials::silicon_carbide()}};
    const double a = ht(p1, p2, env).power, b = ht(p2, p1, env).power;
    CHECK(a > 0.0);
    CHECK(std::abs(a / b - 1.0) < 1e-6);
  }
}

TEST_CASE("detailed balance") {
  const auto p1 = sic(5e-9, Vec3(0, 0, 2e-7)), p2 = sic(5e-9, Vec3(0, 0, -2e-7));
  const greens::Environment env = greens::SphereBody{1e-7, materials::gold_drude()};
  CHECK(net_ht(p1, p2, env) == 0.0);
  auto hot = p1;
  hot.temperature = 400.0;
  CHECK(net_ht(hot, p2, env) > 0.0);
  CHECK(net_ht(p2, hot, env) == doctest::Approx(-net_ht(hot, p2, env)).epsilon(1e-6));
  const std::vector<Particle> ps{p1, p2, sic(5e-9, Vec3(2e-7, 0, 0))};
  for (std::size_t t = 0; t < ps.size(); ++t) CHECK(total_absorption(ps, t, env, 300.0) == 0.0);
}

TEST_CASE("mirror plate and cavity HR") {
  const auto p = sic(1e-10, Vec3::Zero());
  const double vac = hr_vacuum(p).power;
  CHECK(hr_mirror_plate(p, 1e-9).power / vac == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  auto q = p;
  q.position = Vec3(0, 0, 2e-6);
  CHECK(hr(q, greens::HalfSpace{materials::PerfectMirror{}}).power / hr_mirror_plate(q, 2e-6).power ==
        doctest::Approx(1.0).epsilon(1e-8));
  const auto c = hr(q, greens::MirrorCavity{1e-5});
  CHECK(std::abs(c.power) < 1e-10 * vac);
}

TEST_CASE("configuration and dipole errors") {
  QuadratureConfig q;
  q.x_min = 2.0;
  q.x_max = 1.0;
  CHECK_THROWS(validate(q));
  CHECK_THROWS(validate(tol(0.0)));
  // particle radius comparable to its distance to the sphere
  const auto p = sic(5e-8, Vec3(0, 0, 1.1e-7));
  CHECK_THROWS_AS(hr(p, greens::SphereBody{1e-7, materials::gold_drude()}), Error);
  // accuracy error carries the best estimate
  try {
    hr_vacuum(sic(1e-9, Vec3::Zero()), tol(1e-15, 12));
    FAIL("tolerance met unexpectedly");
  } catch (const AccuracyError& e) {
    CHECK(e.best().power > 0.0);
    CHECK_FALSE(e.best().converged);
  }
}

TEST_CASE("convergence series") {
  const double R = 3e-7;
  const auto p1 = sic(5e-9, Vec3(0, 0, R + 1e-7)), p2 = sic(5e-9, Vec3(0, 0, -(R + 1e-7)));
  const greens::SphereBody s{R, materials::gold_drude()};
  const std::vector<int> grid{0, 5, 10, 20, 40, 80};
  const auto st = convergence_study(p1, p2, s, grid);
  CHECK(st.points.back().normalized == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(st.converged == doctest::Approx(ht(p1, p2, s).power).epsilon(1e-5));
  // l = 0 is the vacuum value
  CHECK(st.points.front().value == doctest::Approx(ht_vacuum(p1, p2).power).epsilon(1e-5));

  const auto iso = hr_isolated_sphere(R, materials::gold_drude(), 300.0, grid);
  CHECK(iso.points.back().normalized == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iso.converged > 0.0);
  const auto mir = hr_isolated_sphere(R, materials::PerfectMirror{}, 300.0, grid);
  CHECK(std::abs(mir.converged) < 1e-12 * iso.converged);
  const std::vector<int> bad{3, 2};
  CHECK_THROWS(hr_isolated_sphere(R, materials::gold_drude(), 300.0, bad));
}

}  // TEST_SUITE
