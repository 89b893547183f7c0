#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lvlab {

struct GaussRule {
  std::vector<long double> x;  // nodes on [-1, 1]
  std::vector<long double> w;
};

// n-point Gauss-Legendre rule, computed once per n and cached (thread safe).
const GaussRule& gauss_legendre(std::size_t n);

// 16-point composite rule with `panels` equal panels on each piece between
// consecutive breakpoints (breakpoints must be ascending, at least two).
double composite_gl(const std::function<double(double)>& f, const std::vector<double>& breaks, std::size_t panels);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

// Doubles the panel count until successive values agree to
// max(abs_tol, rel_tol |value|); throws QuadratureError otherwise.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                  std::size_t initial_panels, double rel_tol = 1e-10, double abs_tol = 0.0,
                                  int max_doublings = 8);

}  // namespace lvlab
