#pragma once

#include <optional>

#include "pprad/scenario.hpp"

namespace pprad::cli::detail {

struct Point {
  std::vector<materials::Particle> particles;
  greens::Environment environment;
};

/// Particles and environment of one sweep point (value unset: no sweep).
Point apply(const ScenarioConfig& c, const Series& s, std::optional<double> value);

/// Distances from particle i to the environment surface and to every other
/// particle, for the dipole diagnostic.
std::vector<double> neighbour_distances(const Point& p, std::size_t i);

}  // namespace pprad::cli::detail
