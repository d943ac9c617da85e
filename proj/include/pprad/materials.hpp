#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace pprad::materials {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;

struct VacuumMedium {};

struct ConstantPermittivity {
  cplx eps;
};

/// eps_inf (w^2 - w_LO^2 + i w gamma) / (w^2 - w_TO^2 + i w gamma)
struct LorentzOscillator {
  double eps_inf;
  double omega_lo;  // rad/s
  double omega_to;  // rad/s
  double gamma;     // rad/s
};

/// 1 - w_p^2 / (w (w + i w_tau))
struct DrudeMetal {
  double omega_p;    // rad/s
  double omega_tau;  // rad/s
};

/// Perfect reflector. A symbolic limit: geometries switch to their
/// closed-form mirror expressions instead of evaluating eps.
struct PerfectMirror {};

using DielectricModel =
    std::variant<VacuumMedium, ConstantPermittivity, LorentzOscillator, DrudeMetal, PerfectMirror>;

/// SiC phonon-polariton parameters.
LorentzOscillator silicon_carbide();
/// Gold, Drude model.
DrudeMetal gold_drude();

bool is_mirror(const DielectricModel& model);
std::string describe(const DielectricModel& model);

/// Checks the model's own invariants (positive damping, finite parameters).
void validate(const DielectricModel& model);

/// Frequency window [w_TO, w_LO] of a Lorentz oscillator, empty otherwise.
std::vector<std::pair<double, double>> resonance_windows(const DielectricModel& model);

cplx permittivity(const DielectricModel& model, double omega);

/// R^3 (eps - 1) / (eps + 2), in m^3.
cplx polarizability(cplx eps, double radius);

/// hbar w / (exp(hbar w / k_B T) - 1), in J.
double planck_weight(double omega, double temperature);

/// hbar c / (k_B T)
double thermal_wavelength(double temperature);
/// 2 pi k_B T / hbar
double thermal_frequency(double temperature);

struct Particle {
  DielectricModel material;
  double radius;       // m
  Vec3 position;       // m
  double temperature;  // K

  double volume() const;
};

/// Rejects non-positive radius or temperature and mirror particles.
void validate(const Particle& p);

enum class Verdict { Pass, Warn, Fail };
const char* to_string(Verdict v);

/// Ratio thresholds of the dipole-limit diagnostic.
inline constexpr double kWarnRatio = 0.1;
inline constexpr double kFailRatio = 0.3;

Verdict classify_ratio(double ratio);

struct ValidityCheck {
  std::string name;
  double ratio;
  Verdict verdict;
};

struct ValidityReport {
  std::vector<ValidityCheck> checks;
  Verdict overall = Verdict::Pass;
};

/// R / lambda_T, R / (lambda_T / (2 pi |sqrt eps(w_T)|)) and R / distance for
/// each given distance to another object. Diagnostic only.
ValidityReport dipole_validity(const Particle& p, const std::vector<double>& distances);

}  // namespace pprad::materials
