#include <cmath>

#include <doctest.h>

#include "pprad/constants.hpp"
#include "pprad/errors.hpp"
#include "pprad/materials.hpp"

using namespace pprad;
using namespace pprad::materials;

TEST_SUITE("materials") {

TEST_CASE("SiC static limit and Drude values") {
  const auto sic = silicon_carbide();
  CHECK(sic.eps_inf == 6.7);
  CHECK(sic.omega_lo == 1.82e14);
  CHECK(sic.omega_to == 1.48e14);
  CHECK(sic.gamma == 8.93e11);
  const cplx e0 = permittivity(sic, 1.0);
  CHECK(e0.real() == doctest::Approx(6.7 * 1.82 * 1.82 / (1.48 * 1.48)).epsilon(1e-9));
  CHECK(e0.real() == doctest::Approx(10.13).epsilon(1e-3));

  CHECK(permittivity(DrudeMetal{0.0, 1e13}, 3e14) == cplx(1.0, 0.0));

  // hand-expanded: wp^2 / (w^2 + i w wt) = wp^2 (a - i b) / (a^2 + b^2)
  const auto au = gold_drude();
  const double w = 1e14, a = w * w, b = w * au.omega_tau, wp2 = au.omega_p * au.omega_p;
  const cplx e = permittivity(au, w);
  CHECK(e.real() == doctest::Approx(1.0 - wp2 * a / (a * a + b * b)).epsilon(1e-13));
  CHECK(e.imag() == doctest::Approx(wp2 * b / (a * a + b * b)).epsilon(1e-13));

  CHECK_THROWS_AS(permittivity(PerfectMirror{}, 1e14), Error);
  CHECK_THROWS_AS(permittivity(sic, 0.0), Error);
}

TEST_CASE("polarizability") {
  CHECK(polarizability(1.0, 1e-8) == cplx(0.0, 0.0));
  CHECK(std::abs(polarizability(1e8, 2.0) - 8.0) < 8.0 * 1e-7);
  // (2 + i) / (5 + i) = (2 + i)(5 - i) / 26 = (11 + 3i) / 26
  const cplx al = polarizability({3.0, 1.0}, 1e-8);
  CHECK(al.real() == doctest::Approx(11.0 / 26.0 * 1e-24).epsilon(1e-14));
  CHECK(al.imag() == doctest::Approx(3.0 / 26.0 * 1e-24).epsilon(1e-14));
  try {
    polarizability({-2.0, 0.0}, 1e-8);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resonance);
  }
}

TEST_CASE("passivity and positive Im alpha on a log grid") {
  for (const DielectricModel& m : {DielectricModel{silicon_carbide()}, DielectricModel{gold_drude()}})
    for (int i = 0; i < 10000; ++i) {
      const double w = 1e10 * std::pow(1e7, i / 9999.0);
      const cplx e = permittivity(m, w);
      REQUIRE(e.imag() > 0.0);
      REQUIRE(polarizability(e, 1e-9).imag() >= 0.0);
    }
}

TEST_CASE("Planck weight") {
  const double T = 300.0;
  const double w40 = 40.0 * constants::k_B * T / constants::hbar;
  CHECK(planck_weight(w40, T) / (constants::hbar * w40) == doctest::Approx(1.0 / std::expm1(40.0)).epsilon(1e-12));
  CHECK(1.0 / std::expm1(40.0) == doctest::Approx(4.25e-18).epsilon(1e-3));
  CHECK(planck_weight(1e-3, T) == doctest::Approx(constants::k_B * T).epsilon(1e-9));
  const double wT = thermal_frequency(T);
  CHECK(planck_weight(wT, T) == doctest::Approx(constants::hbar * wT / (std::exp(2 * M_PI) - 1.0)).epsilon(1e-13));
  for (double w : {1e12, 1e13, 1e14}) CHECK(planck_weight(w, 310.0) > planck_weight(w, 300.0));
  double prev = INFINITY;
  for (double x = 1.0; x < 40.0; x += 0.25) {
    const double v = planck_weight(x * constants::k_B * T / constants::hbar, T);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("dipole validity") {
  CHECK(thermal_wavelength(300.0) == doctest::Approx(7.64e-6).epsilon(1e-3));
  Particle p{silicon_carbide(), 1e-9, Vec3::Zero(), 300.0};
  auto r = dipole_validity(p, {1e-5});
  CHECK(r.overall == Verdict::Pass);
  // |sqrt eps(w_T)| = 2.2 for SiC puts the internal-wavelength ratio at 1.8e-3
  for (const auto& c : r.checks) CHECK(c.ratio < 2e-3);
  CHECK(r.checks.front().ratio < 1e-3);

  p.radius = thermal_wavelength(300.0);
  CHECK(dipole_validity(p, {}).overall == Verdict::Fail);

  p.radius = 1e-8;
  r = dipole_validity(p, {1e-7});
  CHECK(r.overall == Verdict::Warn);
  CHECK(r.checks.back().ratio == doctest::Approx(0.1));

  CHECK(classify_ratio(0.05) == Verdict::Pass);
  CHECK(classify_ratio(0.3) == Verdict::Fail);
}

TEST_CASE("particle validation rejects mirrors and bad values") {
  CHECK_THROWS(validate(Particle{PerfectMirror{}, 1e-9, Vec3::Zero(), 300.0}));
  CHECK_THROWS(validate(Particle{silicon_carbide(), -1e-9, Vec3::Zero(), 300.0}));
  CHECK_THROWS(validate(Particle{silicon_carbide(), 1e-9, Vec3::Zero(), 0.0}));
  CHECK_NOTHROW(validate(Particle{silicon_carbide(), 1e-9, Vec3::Zero(), 300.0}));
  CHECK_THROWS(validate(DielectricModel{LorentzOscillator{6.7, 1.82e14, 1.48e14, 0.0}}));
  CHECK(describe(PerfectMirror{}) == "mirror");
  CHECK(resonance_windows(silicon_carbide()).size() == 1);
  CHECK(resonance_windows(gold_drude()).empty());
}

}  // TEST_SUITE
