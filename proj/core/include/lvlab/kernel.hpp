#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lvlab/bump.hpp"

namespace lvlab {

enum class KernelMethod { real_line, deformed_contour };

struct KernelEval {
  double t = 0.0;
  double xi = 0.0;
  std::complex<double> value;
  double quadrature_error_estimate = 0.0;
  // natural log of |value|; stays finite when value underflows double
  double log_abs = 0.0;
  KernelMethod method = KernelMethod::real_line;
};

// Fourier transform of h_t(u) = w(u)^2 u^{it}:  int w(u)^2 u^{it} e(-xi u) du.
class Kernel {
 public:
  explicit Kernel(Bump w);

  KernelEval h_hat(double t, double xi) const;
  // Real-line adaptive Gauss-Legendre only (used as an oracle / at low frequency).
  KernelEval h_hat_real_line(double t, double xi) const;
  // Contour deformation only; requires xi != 0.
  KernelEval h_hat_contour(double t, double xi) const;

  // True when h_hat would use the deformed contour.
  static bool use_contour(double t, double xi);

  const Bump& w() const { return w_; }

 private:
  struct Nodes {
    std::vector<double> u, wt, logu;  // wt already includes w(u)^2
  };
  const Nodes& nodes(std::size_t panels) const;
  std::complex<double> sum_real_line(const Nodes& nd, double t, double xi) const;

  Bump w_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, std::unique_ptr<Nodes>> cache_;
};

const Kernel& default_kernel();

// h_hat with the default w.
KernelEval h_hat(double t, double xi);

}  // namespace lvlab
