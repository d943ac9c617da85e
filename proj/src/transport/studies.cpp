#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "pprad/constants.hpp"

namespace pprad::transport {

namespace {

using constants::c;
using constants::pi;

void check_grid(std::span<const int> l_grid) {
  if (l_grid.empty()) fail(ErrorKind::Domain, "empty l_max grid");
  if (l_grid.front() < 0) fail(ErrorKind::Domain, "l_max grid must be non-negative");
  for (std::size_t i = 1; i < l_grid.size(); ++i)
    if (l_grid[i] <= l_grid[i - 1]) fail(ErrorKind::Domain, "l_max grid must increase strictly");
}

// Node-by-node reevaluation on the panels of a converged run. `partial` fills
// one value per grid entry, `full` returns the converged integrand.
Series on_panels(const quadrature::Result& run, double scale, std::span<const int> l_grid,
                 const std::function<void(double, std::vector<double>&)>& partial,
                 const std::function<double(double)>& full) {
  std::vector<quadrature::CompensatedSum> sums(l_grid.size());
  quadrature::CompensatedSum total;
  std::vector<double> vals(l_grid.size());
  for (const auto& panel : run.panels) {
    for (const auto& node : quadrature::kronrod_nodes(panel.a, panel.b)) {
      const double w = node.x * scale;
      const double wt = node.weight * scale;
      partial(w, vals);
      for (std::size_t i = 0; i < vals.size(); ++i) sums[i].add(wt * vals[i]);
      total.add(wt * full(w));
    }
  }
  Series s;
  s.converged = total.value();
  for (std::size_t i = 0; i < l_grid.size(); ++i) {
    const double v = sums[i].value();
    s.points.push_back({l_grid[i], v, s.converged != 0.0 ? v / s.converged : 0.0});
  }
  return s;
}

// -(2l+1) [Re T + |T|^2] summed over both polarizations, l = 1..L, and
// (2l+1) |T|^2 as the scale of each term.
std::vector<double> emission_terms(int L, double k, const greens::SphereBody& sphere, double omega,
                                   std::vector<double>* scale = nullptr) {
  const auto tab = greens::mie_table(L, k, sphere, omega);
  std::vector<double> out(static_cast<std::size_t>(L) + 1, 0.0);
  if (scale) scale->assign(out.size(), 0.0);
  for (std::size_t l = 1; l <= static_cast<std::size_t>(L); ++l) {
    double t = 0.0, m = 0.0;
    for (const Scaled* s : {&tab.t_m[l], &tab.t_n[l]}) {
      const std::complex<double> v = s->value();
      t -= (2.0 * l + 1.0) * (v.real() + std::norm(v));
      m += (2.0 * l + 1.0) * std::abs(v);
    }
    out[l] = t;
    if (scale) (*scale)[l] = m;
  }
  return out;
}

}  // namespace

Series hr_isolated_sphere(double radius, const materials::DielectricModel& material, double temperature,
                          std::span<const int> l_grid, const QuadratureConfig& q) {
  check_grid(l_grid);
  if (!(radius > 0.0)) fail(ErrorKind::Domain, "sphere radius must be > 0");
  materials::validate(material);
  const greens::SphereBody sphere{radius, material, 1.0, greens::Vec3::Zero()};
  const int l_top = std::max(1, l_grid.back());

  int conv_l = 0;
  // converged sum: stop after three orders each below 1e-14 of the running
  // sum, or of the running sum of |T| for a lossless sphere (sum ~ 0)
  auto full_sum = [&](double w, int* used) {
    const double k = w / c;
    int L = 16 + static_cast<int>(std::ceil(2.0 * k * radius));
    while (true) {
      std::vector<double> mag;
      const auto terms = emission_terms(L, k, sphere, w, &mag);
      double sum = 0.0, ref = 0.0;
      int small = 0;
      for (int l = 1; l <= L; ++l) {
        const auto i = static_cast<std::size_t>(l);
        sum += terms[i];
        ref += mag[i];
        const double bound = 1e-14 * std::max(std::abs(sum), 1e-3 * ref);
        small = (std::abs(terms[i]) <= bound && mag[i] <= 1e-3 * ref) ? small + 1 : 0;
        if (small == 3) {
          if (used) *used = l;
          return sum;
        }
      }
      if (L >= specfun::kOrderCap) fail(ErrorKind::NonConvergence, "isolated-sphere emission sum not converged");
      L = std::min(2 * L, specfun::kOrderCap);
    }
  };
  auto integrand = [&](double w) {
    int used = 0;
    const double s = full_sum(w, &used);
    conv_l = std::max(conv_l, used);
    return 2.0 / pi * materials::planck_weight(w, temperature) * s;
  };

  // floor against a black body of the same surface; a mirror sphere emits nothing
  const double kT = constants::k_B * temperature;
  const double sigma = pi * pi * kT * kT * kT * kT / (60.0 * std::pow(constants::hbar, 3) * c * c);
  const double floor = q.rel_tol * 1e-6 * sigma * 4.0 * pi * radius * radius;
  const auto run = detail::integrate_omega(integrand, temperature,
                                           materials::resonance_windows(material), q, floor);
  if (!run.converged) {
    TransferResult best;
    best.power = run.value;
    best.error = run.error;
    throw AccuracyError("hr_isolated_sphere: frequency quadrature tolerance not met", best);
  }
  const double scale = constants::k_B * temperature / constants::hbar;
  auto partial = [&](double w, std::vector<double>& vals) {
    const auto terms = emission_terms(l_top, w / c, sphere, w);
    const double pref = 2.0 / pi * materials::planck_weight(w, temperature);
    double run_sum = 0.0;
    std::size_t i = 0;
    for (int l = 0; l <= l_top && i < l_grid.size(); ++l) {
      if (l > 0) run_sum += terms[static_cast<std::size_t>(l)];
      while (i < l_grid.size() && l_grid[i] == l) vals[i++] = pref * run_sum;
    }
  };
  auto s = on_panels(run, scale, l_grid, partial, [&](double w) { return integrand(w); });
  s.converged_l = conv_l;
  s.error = run.error;
  return s;
}

Series convergence_study(const Particle& p1, const Particle& p2, const greens::SphereBody& sphere,
                         std::span<const int> l_grid, const QuadratureConfig& q, const MultipolePolicy& policy) {
  check_grid(l_grid);
  const Environment env = sphere;
  materials::validate(p1);
  materials::validate(p2);
  const double d = (p2.position - p1.position).norm();
  detail::require_dipole(p1, {greens::surface_distance(env, p1.position), d});
  detail::require_dipole(p2, {greens::surface_distance(env, p2.position), d});
  const greens::PairGreens green(env, p2.position, p1.position);

  auto pref = [&](double w) {
    return 32.0 * pi / std::pow(c, 4) * std::pow(w, 4) * materials::planck_weight(w, p1.temperature) *
           detail::im_alpha(p1, w) * detail::im_alpha(p2, w);
  };
  const double floor = q.rel_tol * 1e-6 * ht_vacuum(p1, p2, q).power;
  int max_l = 0;
  auto full = [&](double w) {
    const auto g = green(w / c, w, policy);
    max_l = std::max(max_l, g.l_max);
    return pref(w) * g.value.squaredNorm();
  };
  const auto run = detail::integrate_omega(full, p1.temperature, detail::windows_for({&p1, &p2}, env), q, floor);
  if (!run.converged) {
    TransferResult best;
    best.power = run.value;
    best.error = run.error;
    throw AccuracyError("convergence_study: frequency quadrature tolerance not met", best);
  }
  const double scale = constants::k_B * p1.temperature / constants::hbar;
  auto partial = [&](double w, std::vector<double>& vals) {
    const auto g = green.partial_sums(w / c, w, l_grid);
    const double p = pref(w);
    for (std::size_t i = 0; i < g.size(); ++i) vals[i] = p * g[i].squaredNorm();
  };
  auto s = on_panels(run, scale, l_grid, partial, full);
  s.converged_l = max_l;
  s.error = run.error;
  return s;
}

}  // namespace pprad::transport
