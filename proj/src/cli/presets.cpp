#include "pprad/scenario.hpp"

namespace pprad::cli {

namespace {

constexpr double kT1 = 300.0;
constexpr double kGap = 1e-7;         // particle to sphere surface
constexpr double kSphereProbe = 5e-9;  // particle radius next to spheres
constexpr double kPlateProbe = 1e-10;  // particle radius above the plate

materials::Particle sic(double radius, const greens::Vec3& at) {
  return {materials::silicon_carbide(), radius, at, kT1};
}

// two SiC particles on opposite poles, gap h from a sphere of radius R
std::vector<materials::Particle> pole_pair(double R) {
  return {sic(kSphereProbe, {0, 0, R + kGap}), sic(kSphereProbe, {0, 0, -(R + kGap)})};
}

ScenarioConfig fig_sphere() {
  ScenarioConfig c;
  c.mode = Mode::Sweep;
  c.quantity = Quantity::HT;
  c.particles = pole_pair(1e-9);
  const greens::Vec3 o = greens::Vec3::Zero();
  c.series = {{"sic", greens::SphereBody{1e-9, materials::silicon_carbide(), 1.0, o}, std::nullopt},
              {"mirror", greens::SphereBody{1e-9, materials::PerfectMirror{}, 1.0, o}, std::nullopt},
              {"gold", greens::SphereBody{1e-9, materials::gold_drude(), 1.0, o}, std::nullopt}};
  c.sweep = SweepAxis{"sphere_radius", true, 1e-9, 3e-5, 60, kGap};
  c.multipole.l_cap = specfun::kOrderCap;
  return c;
}

ScenarioConfig fig_plate() {
  ScenarioConfig c;
  c.mode = Mode::Sweep;
  c.quantity = Quantity::HR;
  c.particles = {sic(kPlateProbe, {0, 0, 1e-8})};
  c.series = {{"mirror", greens::HalfSpace{materials::PerfectMirror{}, 1.0}, std::nullopt}};
  c.sweep = SweepAxis{"plate_distance", true, 1e-8, 1e-3, 200, kGap};
  return c;
}

ScenarioConfig fig_convergence() {
  ScenarioConfig c;
  c.mode = Mode::Convergence;
  c.quantity = Quantity::HT;
  const double R = 1e-6;
  c.particles = pole_pair(R);
  c.series = {{"gold", greens::SphereBody{R, materials::gold_drude(), 1.0, greens::Vec3::Zero()}, std::nullopt}};
  for (int l = 1; l <= 150; ++l) c.l_grid.push_back(l);
  c.isolated_sphere = true;
  return c;
}

ScenarioConfig cavity_null() {
  ScenarioConfig c;
  c.mode = Mode::HR;
  c.quantity = Quantity::HR;
  c.particles = {sic(1e-9, {0, 0, 2e-6})};
  c.series = {{"cavity", greens::MirrorCavity{1e-5, greens::Vec3::Zero()}, std::nullopt}};
  return c;
}

}  // namespace

std::vector<PresetInfo> preset_list() {
  return {{"fig-sphere", "HT between two SiC particles at h = 1e-7 m from a SiC, mirror or gold sphere, vs R"},
          {"fig-plate", "HR of a SiC particle above a mirror plate, vs distance"},
          {"fig-convergence", "multipole partial sums next to a gold sphere, R = 1e-6 m, and the isolated sphere HR"},
          {"cavity-null", "HR of a SiC particle inside a mirror cavity"}};
}

ScenarioConfig preset(const std::string& name) {
  if (name == "fig-sphere") return fig_sphere();
  if (name == "fig-plate") return fig_plate();
  if (name == "fig-convergence") return fig_convergence();
  if (name == "cavity-null") return cavity_null();
  fail(ErrorKind::Config, "unknown preset '" + name + "'");
}

}  // namespace pprad::cli
