#include <cmath>

#include <doctest.h>

#include "pprad/quadrature.hpp"

using namespace pprad::quadrature;

TEST_SUITE("quadrature") {

TEST_CASE("smooth, peaked and endpoint-singular integrands") {
  auto r = integrate([](double x) { return std::exp(-x); }, {0.0, 1.0, 40.0}, {1e-12, 0.0, 1000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(-std::expm1(-40.0)).epsilon(1e-12));

  // narrow Lorentzian, the shape of a phonon resonance
  const double g = 1e-4;
  r = integrate([&](double x) { return g / M_PI / ((x - 0.3) * (x - 0.3) + g * g); }, {0.0, 1.0}, {1e-10, 0.0, 5000});
  CHECK(r.value == doctest::Approx((std::atan(0.7 / g) + std::atan(0.3 / g)) / M_PI).epsilon(1e-9));

  r = integrate([](double x) { return 1.0 / std::sqrt(x); }, {0.0, 1.0}, {1e-8, 0.0, 5000});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("error estimate bounds the true error") {
  for (double tol : {1e-4, 1e-6, 1e-8}) {
    auto r = integrate([](double x) { return std::sin(30 * x) * std::exp(x); }, {0.0, 2.0}, {tol, 0.0, 5000});
    const double exact = (std::exp(2.0) * (std::sin(60.0) - 30 * std::cos(60.0)) + 30.0) / 901.0;
    CHECK(std::abs(r.value - exact) <= r.error + 1e-15);
  }
}

TEST_CASE("panel cap reports non-convergence and results are reproducible") {
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  auto r = integrate(f, {0.0, 1.0}, {1e-14, 0.0, 4});
  CHECK_FALSE(r.converged);
  auto a = integrate(f, {0.0, 1.0}, {1e-8, 0.0, 5000});
  auto b = integrate(f, {0.0, 1.0}, {1e-8, 0.0, 5000});
  CHECK(a.value == b.value);
  CHECK(a.panels.size() == b.panels.size());
  double sum = 0.0;
  for (const auto& n : kronrod_nodes(-1.0, 3.0)) sum += n.weight;
  CHECK(sum == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

}  // TEST_SUITE
