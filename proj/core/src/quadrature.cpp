#include "lvlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "lvlab/errors.hpp"

namespace lvlab {

namespace {

GaussRule compute_rule(std::size_t n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const long double pi = std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(pi * (static_cast<long double>(i) + 0.75L) / (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = 0.0L;
      for (std::size_t k = 1; k <= n; ++k) {
        long double p2 = p1;
        p1 = p0;
        p0 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p2) / static_cast<long double>(k);
      }
      dp = static_cast<long double>(n) * (z * p0 - p1) / (z * z - 1.0L);
      long double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    long double w = 2.0L / ((1.0L - z * z) * dp * dp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

double composite_gl(const std::function<double(double)>& f, const std::vector<double>& breaks, std::size_t panels) {
  const auto& g = gauss_legendre(16);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], width = (breaks[k + 1] - a) / static_cast<double>(panels);
    if (!(width > 0.0)) continue;
    for (std::size_t p = 0; p < panels; ++p) {
      const double c = a + width * (static_cast<double>(p) + 0.5), h = 0.5 * width;
      double s = 0.0;
      for (std::size_t i = 0; i < 16; ++i) s += static_cast<double>(g.w[i]) * f(c + h * static_cast<double>(g.x[i]));
      total += s * h;
    }
  }
  return total;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                  std::size_t initial_panels, double rel_tol, double abs_tol, int max_doublings) {
  std::size_t panels = std::max<std::size_t>(1, initial_panels);
  double prev = composite_gl(f, breaks, panels);
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    double cur = composite_gl(f, breaks, panels);
    double err = std::fabs(cur - prev);
    if (err <= std::max(abs_tol, rel_tol * std::fabs(cur))) return {cur, err, panels};
    prev = cur;
  }
  throw QuadratureError("integrate_adaptive: no convergence after " + std::to_string(panels) + " panels");
}

}  // namespace lvlab
