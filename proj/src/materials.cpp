#include "pprad/materials.hpp"

#include <cmath>
#include <sstream>

#include "pprad/constants.hpp"
#include "pprad/errors.hpp"

namespace pprad::materials {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

LorentzOscillator silicon_carbide() { return {6.7, 1.82e14, 1.48e14, 8.93e11}; }

DrudeMetal gold_drude() { return {1.37e16, 4.06e13}; }

bool is_mirror(const DielectricModel& model) { return std::holds_alternative<PerfectMirror>(model); }

std::string describe(const DielectricModel& model) {
  std::ostringstream os;
  os.precision(6);
  std::visit(overloaded{
                 [&](const VacuumMedium&) { os << "vacuum"; },
                 [&](const ConstantPermittivity& c) { os << "constant(" << c.eps.real() << "," << c.eps.imag() << ")"; },
                 [&](const LorentzOscillator& s) {
                   os << "lorentz(eps_inf=" << s.eps_inf << ",w_lo=" << s.omega_lo << ",w_to=" << s.omega_to
                      << ",gamma=" << s.gamma << ")";
                 },
                 [&](const DrudeMetal& d) { os << "drude(w_p=" << d.omega_p << ",w_tau=" << d.omega_tau << ")"; },
                 [&](const PerfectMirror&) { os << "mirror"; },
             },
             model);
  return os.str();
}

void validate(const DielectricModel& model) {
  std::visit(overloaded{
                 [](const VacuumMedium&) {},
                 [](const ConstantPermittivity& c) {
                   if (!std::isfinite(c.eps.real()) || !std::isfinite(c.eps.imag()))
                     fail(ErrorKind::Config, "constant permittivity must be finite");
                   if (c.eps.imag() < 0.0) fail(ErrorKind::Config, "constant permittivity must have Im eps >= 0");
                 },
                 [](const LorentzOscillator& s) {
                   if (!(s.gamma > 0.0)) fail(ErrorKind::Config, "Lorentz damping gamma must be > 0");
                   if (!(s.omega_to > 0.0) || !(s.omega_lo > 0.0) || !(s.eps_inf > 0.0))
                     fail(ErrorKind::Config, "Lorentz eps_inf, w_LO, w_TO must be > 0");
                 },
                 [](const DrudeMetal& d) {
                   if (!(d.omega_tau > 0.0)) fail(ErrorKind::Config, "Drude damping w_tau must be > 0");
                   if (!(d.omega_p >= 0.0)) fail(ErrorKind::Config, "Drude plasma frequency must be >= 0");
                 },
                 [](const PerfectMirror&) {},
             },
             model);
}

std::vector<std::pair<double, double>> resonance_windows(const DielectricModel& model) {
  if (const auto* s = std::get_if<LorentzOscillator>(&model)) {
    const double lo = std::min(s->omega_to, s->omega_lo), hi = std::max(s->omega_to, s->omega_lo);
    if (hi > lo) return {{lo, hi}};
  }
  return {};
}

cplx permittivity(const DielectricModel& model, double omega) {
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "permittivity needs omega > 0");
  return std::visit(overloaded{
                        [](const VacuumMedium&) { return cplx(1.0); },
                        [](const ConstantPermittivity& c) { return c.eps; },
                        [&](const LorentzOscillator& s) {
                          const cplx damp(0.0, omega * s.gamma);
                          return s.eps_inf * (omega * omega - s.omega_lo * s.omega_lo + damp) /
                                 (omega * omega - s.omega_to * s.omega_to + damp);
                        },
                        [&](const DrudeMetal& d) {
                          return 1.0 - d.omega_p * d.omega_p / (omega * cplx(omega, d.omega_tau));
                        },
                        [](const PerfectMirror&) -> cplx {
                          fail(ErrorKind::Unsupported, "a perfect mirror has no finite permittivity");
                        },
                    },
                    model);
}

cplx polarizability(cplx eps, double radius) {
  const cplx den = eps + 2.0;
  if (std::abs(den) < 1e-12) fail(ErrorKind::Resonance, "eps = -2: dipole polarizability pole");
  return radius * radius * radius * (eps - 1.0) / den;
}

double planck_weight(double omega, double temperature) {
  if (!(omega > 0.0) || !(temperature > 0.0)) fail(ErrorKind::Domain, "Planck weight needs omega, T > 0");
  const double x = constants::hbar * omega / (constants::k_B * temperature);
  return constants::hbar * omega / std::expm1(x);
}

double thermal_wavelength(double temperature) {
  return constants::hbar * constants::c / (constants::k_B * temperature);
}

double thermal_frequency(double temperature) {
  return 2.0 * constants::pi * constants::k_B * temperature / constants::hbar;
}

double Particle::volume() const { return 4.0 / 3.0 * constants::pi * radius * radius * radius; }

void validate(const Particle& p) {
  if (!(p.radius > 0.0) || !std::isfinite(p.radius)) fail(ErrorKind::Config, "particle radius must be > 0");
  if (!(p.temperature > 0.0) || !std::isfinite(p.temperature))
    fail(ErrorKind::Config, "particle temperature must be > 0");
  if (!p.position.allFinite()) fail(ErrorKind::Config, "particle position must be finite");
  if (is_mirror(p.material))
    fail(ErrorKind::Config, "perfect-mirror particles neither emit nor absorb; use a finite permittivity");
  validate(p.material);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Warn: return "warn";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

Verdict classify_ratio(double ratio) {
  // relative slack so that e.g. 1e-8 / 1e-7 lands on the threshold
  constexpr double slack = 1.0 - 1e-12;
  if (!(ratio < kFailRatio * slack)) return Verdict::Fail;
  if (!(ratio < kWarnRatio * slack)) return Verdict::Warn;
  return Verdict::Pass;
}

ValidityReport dipole_validity(const Particle& p, const std::vector<double>& distances) {
  ValidityReport rep;
  const double lambda = thermal_wavelength(p.temperature);
  auto add = [&](std::string name, double ratio) {
    const Verdict v = classify_ratio(ratio);
    rep.checks.push_back({std::move(name), ratio, v});
    if (static_cast<int>(v) > static_cast<int>(rep.overall)) rep.overall = v;
  };
  add("radius/thermal_wavelength", p.radius / lambda);
  if (!is_mirror(p.material)) {
    const cplx eps = permittivity(p.material, thermal_frequency(p.temperature));
    const double skin = lambda / (2.0 * constants::pi * std::abs(std::sqrt(eps)));
    add("radius/internal_wavelength", p.radius / skin);
  }
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    add("radius/distance[" + std::to_string(i) + "]", d > 0.0 ? p.radius / d : INFINITY);
  }
  return rep;
}

}  // namespace pprad::materials
