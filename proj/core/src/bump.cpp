#include "lvlab/bump.hpp"

#include <cmath>

#include "lvlab/errors.hpp"
#include "lvlab/quadrature.hpp"

namespace lvlab {

namespace {

// exponent e with s = 1 / (1 + exp(e))
double glue_exponent(double x, double alpha) { return alpha / x - alpha / (1.0 - x); }

double logistic_neg(double e) {
  // 1 / (1 + exp(e)) without overflow
  if (e > 0) {
    double z = std::exp(-e);
    return z / (1.0 + z);
  }
  return 1.0 / (1.0 + std::exp(e));
}

std::complex<long double> logistic_neg_c(std::complex<long double> e) {
  if (e.real() > 0) {
    auto z = std::exp(-e);
    return z / (1.0L + z);
  }
  return 1.0L / (1.0L + std::exp(e));
}

double square_integral(double alpha) {
  // int_0^1 s(x)^2 dx, panels graded towards both ends
  const auto& g = gauss_legendre(40);
  double total = 0.0;
  auto panel = [&](double a, double b) {
    double h = 0.5 * (b - a), c = 0.5 * (b + a), s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double v = glue(c + h * static_cast<double>(g.x[i]), alpha);
      s += static_cast<double>(g.w[i]) * v * v;
    }
    return s * h;
  };
  const int depth = 40;
  double left = 0.0;
  for (int k = depth; k >= 1; --k) left += panel(std::ldexp(0.5, -k), std::ldexp(0.5, -k + 1));
  double right = 0.0;
  for (int k = 1; k <= depth; ++k) right += panel(1.0 - std::ldexp(0.5, -k + 1), 1.0 - std::ldexp(0.5, -k));
  total = left + right;
  return total;
}

}  // namespace

double glue(double x, double alpha) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return logistic_neg(glue_exponent(x, alpha));
}

double glue_complement(double x, double alpha) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return logistic_neg(-glue_exponent(x, alpha));
}

std::complex<long double> glue_c(std::complex<long double> x, long double alpha) {
  auto e = alpha / x - alpha / (1.0L - x);
  return logistic_neg_c(e);
}

std::complex<long double> glue_complement_c(std::complex<long double> x, long double alpha) {
  auto e = alpha / x - alpha / (1.0L - x);
  return logistic_neg_c(-e);
}

Bump::Bump(double lo, double hi, double plateau_lo, double plateau_hi, double alpha)
    : lo_(lo), hi_(hi), plo_(plateau_lo), phi_(plateau_hi), alpha_(alpha) {
  if (!(lo < plateau_lo && plateau_lo <= plateau_hi && plateau_hi < hi))
    throw InvalidInput("bump: need lo < plateau_lo <= plateau_hi < hi");
  if (!(alpha > 0.0)) throw InvalidInput("bump: glue sharpness must be positive");
  double sq = square_integral(alpha);
  norm2_ = (phi_ - plo_) + ((plo_ - lo_) + (hi_ - phi_)) * sq;
}

double Bump::operator()(double u) const {
  if (u <= lo_ || u >= hi_) return 0.0;
  if (u < plo_) return glue((u - lo_) / (plo_ - lo_), alpha_);
  if (u > phi_) return glue((hi_ - u) / (hi_ - phi_), alpha_);
  return 1.0;
}

Bump make_w(double alpha) { return Bump(1.0, 2.0, 1.2, 1.8, alpha); }

const Bump& default_w() {
  static const Bump w = make_w();
  return w;
}

const Bump& default_psi0() {
  static const Bump p(-2.0, 2.0, -1.0, 1.0);
  return p;
}

double bump_w(double u) { return default_w()(u); }

}  // namespace lvlab
