#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pprad/errors.hpp"
#include "pprad/greens.hpp"
#include "pprad/materials.hpp"

namespace pprad::transport {

using greens::Environment;
using greens::MultipolePolicy;
using materials::Particle;

/// Frequency integration in x = hbar w / (k_B T) over [x_min, x_max].
/// Each forced window (rad/s) is split into window_panels initial panels;
/// the resonance windows of every material involved are added automatically.
struct QuadratureConfig {
  double x_min = 1e-4;
  double x_max = 40.0;
  double rel_tol = 1e-6;
  std::vector<std::pair<double, double>> windows;
  int window_panels = 32;
  int max_panels = 20000;
};

void validate(const QuadratureConfig& q);

struct TransferResult {
  double power = 0.0;       // W
  double normalized = 0.0;  // W / m^3 (HR) or W / m^6 (HT)
  double error = 0.0;       // W
  int max_l = 0;
  int evaluations = 0;
  bool converged = true;
};

/// Tolerance not met at the panel cap; carries the best estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, TransferResult best)
      : Error(ErrorKind::Accuracy, what), best_(best) {}
  const TransferResult& best() const { return best_; }

 private:
  TransferResult best_;
};

// ---------------------------------------------------------------------------
// Heat radiation of one particle
// ---------------------------------------------------------------------------

/// Spectral HR, W per rad/s: (8/c^2) w^2 Theta(w, T) Im alpha sum_i Im G_ii(r, r).
double hr_kernel(double omega, const Particle& p, const Environment& env, const MultipolePolicy& policy = {});

TransferResult hr(const Particle& p, const Environment& env, const QuadratureConfig& q = {},
                  const MultipolePolicy& policy = {});

/// Direct quadrature of 4 w^3 Theta Im alpha / (pi c^3).
TransferResult hr_vacuum(const Particle& p, const QuadratureConfig& q = {});

/// Direct quadrature of the mirror-plate closed form at height d.
TransferResult hr_mirror_plate(const Particle& p, double d, const QuadratureConfig& q = {});

// ---------------------------------------------------------------------------
// Heat transfer between two particles
// ---------------------------------------------------------------------------

/// Spectral HT from p1 (at p1.temperature) to p2, W per rad/s:
/// (32 pi / c^4) w^4 Theta Im alpha1 Im alpha2 sum_ij |G_ij(r2, r1)|^2.
double ht_kernel(double omega, const Particle& p1, const Particle& p2, const Environment& env,
                 const MultipolePolicy& policy = {});

TransferResult ht(const Particle& p1, const Particle& p2, const Environment& env, const QuadratureConfig& q = {},
                  const MultipolePolicy& policy = {});

/// Direct quadrature of the vacuum closed form at T = p1.temperature.
TransferResult ht_vacuum(const Particle& p1, const Particle& p2, const QuadratureConfig& q = {});

/// ht at p1's temperature minus ht with p1 at p2's temperature.
double net_ht(const Particle& p1, const Particle& p2, const Environment& env, const QuadratureConfig& q = {},
              const MultipolePolicy& policy = {});

/// Heat absorbed by particles[target]: its own HR plus the HT from every
/// other particle, each taken relative to the same quantity at t_env.
double total_absorption(std::span<const Particle> particles, std::size_t target, const Environment& env,
                        double t_env, const QuadratureConfig& q = {}, const MultipolePolicy& policy = {});

// ---------------------------------------------------------------------------
// Multipole convergence
// ---------------------------------------------------------------------------

struct SeriesPoint {
  int l_max;
  double value;       // W
  double normalized;  // value / converged
};

struct Series {
  std::vector<SeriesPoint> points;
  double converged = 0.0;  // W
  double error = 0.0;      // quadrature error of the converged value, W
  int converged_l = 0;
};

/// HR of an isolated sphere, -(2/pi) int dw Theta sum_{l,P} (2l+1)[Re T + |T|^2],
/// truncated at each l in l_grid.
Series hr_isolated_sphere(double radius, const materials::DielectricModel& material, double temperature,
                          std::span<const int> l_grid, const QuadratureConfig& q = {});

/// HT between two particles next to a sphere with the multipole sum
/// truncated at each l in l_grid, on the frequency panels of the converged run.
Series convergence_study(const Particle& p1, const Particle& p2, const greens::SphereBody& sphere,
                         std::span<const int> l_grid, const QuadratureConfig& q = {},
                         const MultipolePolicy& policy = {});

}  // namespace pprad::transport
