#pragma once

#include <functional>
#include <vector>

#include "pprad/quadrature.hpp"
#include "pprad/transport.hpp"

namespace pprad::transport::detail {

/// Resonance windows of every dielectric in the particle set and environment.
std::vector<std::pair<double, double>> windows_for(std::initializer_list<const Particle*> particles,
                                                   const Environment& env);

/// int_0^inf f(w) dw with w = x k_B T / hbar over [x_min, x_max]. Values
/// and errors come back in W; the panels stay in x.
quadrature::Result integrate_omega(const std::function<double(double)>& f, double temperature,
                                   const std::vector<std::pair<double, double>>& windows,
                                   const QuadratureConfig& q, double abs_tol);

/// Breakpoints in x for the given temperature and windows.
std::vector<double> x_breakpoints(double temperature, const std::vector<std::pair<double, double>>& windows,
                                  const QuadratureConfig& q);

/// Throws Domain if the dipole diagnostic fails for any given distance.
void require_dipole(const Particle& p, std::vector<double> distances);

double im_alpha(const Particle& p, double omega);

}  // namespace pprad::transport::detail
