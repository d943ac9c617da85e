#include "pprad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "pprad/errors.hpp"

namespace pprad::quadrature {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the center.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double f1 = f(c - dx), f2 = f(c + dx);
    kron += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

struct ByError {
  const std::vector<Panel>* panels;
  bool operator()(std::size_t l, std::size_t r) const {
    const auto& pl = (*panels)[l];
    const auto& pr = (*panels)[r];
    if (pl.error != pr.error) return pl.error < pr.error;
    return pl.a > pr.a;
  }
};

}  // namespace

std::array<Node, 15> kronrod_nodes(double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<Node, 15> out{};
  out[0] = {c, kWgk[7] * h};
  for (std::size_t j = 0; j < 7; ++j) {
    out[1 + 2 * j] = {c - h * kXgk[j], kWgk[j] * h};
    out[2 + 2 * j] = {c + h * kXgk[j], kWgk[j] * h};
  }
  return out;
}

Result integrate(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                 const Options& opts) {
  if (breakpoints.size() < 2) fail(ErrorKind::Domain, "integration needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1])) fail(ErrorKind::Domain, "breakpoints must increase strictly");

  std::vector<Panel> panels;
  panels.reserve(breakpoints.size() * 4);
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    panels.push_back(evaluate_panel(f, breakpoints[i - 1], breakpoints[i]));
  }
  int evals = static_cast<int>(panels.size()) * 15;

  std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> queue(ByError{&panels});
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push(i);
    total += panels[i].value;
    err += panels[i].error;
  }

  auto target = [&] { return std::max(opts.rel_tol * std::abs(total), opts.abs_tol); };
  bool converged = err <= target();
  while (!converged && static_cast<int>(panels.size()) < opts.max_panels && !queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    const Panel p = panels[i];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-13 * std::max(std::abs(p.a), std::abs(p.b))) {
      continue;  // cannot be refined further in double precision
    }
    const Panel left = evaluate_panel(f, p.a, mid);
    const Panel right = evaluate_panel(f, mid, p.b);
    evals += 30;
    total += left.value + right.value - p.value;
    err += left.error + right.error - p.error;
    panels[i] = left;
    panels.push_back(right);
    queue.push(i);
    queue.push(panels.size() - 1);
    converged = err <= target();
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value, error;
  for (const auto& p : panels) {
    value.add(p.value);
    error.add(p.error);
  }
  Result r;
  r.value = value.value();
  r.error = error.value();
  r.evaluations = evals;
  r.converged = r.error <= std::max(opts.rel_tol * std::abs(r.value), opts.abs_tol);
  r.panels = std::move(panels);
  return r;
}

}  // namespace pprad::quadrature
