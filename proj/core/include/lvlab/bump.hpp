#pragma once

#include <complex>

namespace lvlab {

// Glue sharpness for phi(x) = exp(-alpha / x). alpha = 1 is the textbook choice;
// 1.6 gives a noticeably faster |h_t(0)| decay in t (see README).
inline constexpr double kDefaultGlueSharpness = 1.6;

// s(x) = phi(x) / (phi(x) + phi(1 - x)); 0 for x <= 0, 1 for x >= 1.
double glue(double x, double alpha);
// 1 - s(x), evaluated without cancellation.
double glue_complement(double x, double alpha);

// Analytic continuation of s and 1 - s into the complex plane.
std::complex<long double> glue_c(std::complex<long double> x, long double alpha);
std::complex<long double> glue_complement_c(std::complex<long double> x, long double alpha);

// C-infinity plateau bump: 0 outside [lo, hi], 1 on [plateau_lo, plateau_hi].
class Bump {
 public:
  Bump(double lo, double hi, double plateau_lo, double plateau_hi, double alpha = kDefaultGlueSharpness);

  double operator()(double u) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double plateau_lo() const { return plo_; }
  double plateau_hi() const { return phi_; }
  double alpha() const { return alpha_; }
  // Integral of the square over the real line.
  double l2_norm_sq() const { return norm2_; }

 private:
  double lo_, hi_, plo_, phi_, alpha_;
  double norm2_ = 0.0;
};

// The weight w: support [1, 2], plateau [6/5, 9/5].
const Bump& default_w();
Bump make_w(double alpha = kDefaultGlueSharpness);
// psi_0: support [-2, 2], plateau [-1, 1].
const Bump& default_psi0();

// Convenience evaluation of the default w.
double bump_w(double u);

}  // namespace lvlab
