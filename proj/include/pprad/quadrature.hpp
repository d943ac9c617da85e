#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace pprad::quadrature {

struct Panel {
  double a, b;
  double value;
  double error;  // |Kronrod - Gauss|
};

struct Options {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_panels = 20000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<Panel> panels;  // sorted by position
};

/// Adaptive 7/15-point Gauss-Kronrod integration over the initial panels
/// given by consecutive breakpoints. The panel with the largest error is
/// bisected until sum(error) <= max(rel_tol |I|, abs_tol). Panel order and
/// the final summation order are fixed, so results are bit-reproducible.
Result integrate(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                 const Options& opts);

struct Node {
  double x, weight;
};

/// The 15 Kronrod nodes and weights mapped onto [a, b].
std::array<Node, 15> kronrod_nodes(double a, double b);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

}  // namespace pprad::quadrature
