#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lvlab/characters.hpp"

namespace lvlab {

using cplx = std::complex<double>;

inline constexpr double kMaxImagS = 1e4;
inline constexpr double kDegradedImagS = 1e3;

// Euler-Maclaurin with Bernoulli corrections through B_20. `degraded` is set
// when |Im s| exceeds 1e3, where the relative accuracy target no longer holds.
cplx hurwitz_zeta(cplx s, double a, bool* degraded = nullptr);
// zeta(s,a) - 1/(s-1); finite at s = 1.
cplx hurwitz_zeta_regular(cplx s, double a, bool* degraded = nullptr);

cplx log_gamma(cplx z);
cplx complex_gamma(cplx z);

// L(s, chi) through the inducing primitive character and the missing Euler factors.
class LFunction {
 public:
  explicit LFunction(const DirichletCharacter& chi);

  cplx operator()(cplx s, bool* degraded = nullptr) const;

  u64 q() const { return q_; }
  u64 conductor() const { return conductor_; }
  // Principal characters carry the simple pole of zeta at s = 1.
  bool has_pole() const { return pole_; }
  // chi(n) for the original (imprimitive) character.
  cplx chi(i64 n) const { return table_[static_cast<std::size_t>(mod_floor(n, static_cast<i64>(q_)))]; }

 private:
  template <class F>
  cplx eval(cplx s) const;

  u64 q_;
  u64 conductor_;
  bool pole_;
  std::vector<std::pair<double, std::complex<long double>>> residues_;  // (a/q*, chi*(a))
  std::vector<std::pair<double, cplx>> euler_;                          // (p, chi*(p))
  std::vector<cplx> table_;
};

cplx l_value(cplx s, const DirichletCharacter& chi);

// c_n = sum_{d | n, d <= X} mu(d) for n <= Y log^2 Y.
struct MollifierSpec {
  u64 X = 10;
  double Y = 50.0;
  std::vector<double> coefficients;  // index n, entry 0 unused

  MollifierSpec() = default;
  MollifierSpec(u64 X, double Y);
  u64 cutoff() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

struct LocatedZero {
  double beta;
  double t;
  double residual;  // |L| at the refined point
  int multiplicity;
};

struct ZeroCountOptions {
  double right_edge = 1.6;
  // Left edge sits this far left of sigma so that zeros with beta == sigma count.
  double left_margin = 1e-6;
  double window_height = 8.0;
  double max_T = 1e3;
  int boundary_retries = 5;
  bool locate = true;
  bool parallel = true;  // over t-windows
};

struct ZeroCount {
  double sigma;
  double T;  // height actually used after boundary retries
  long count;
  std::vector<LocatedZero> zeros;  // ascending t
  int retries;
  std::size_t evaluations;
};

ZeroCount count_zeros(double sigma, double T, const DirichletCharacter& chi,
                      const ZeroCountOptions& opt = {});

struct DensityBudget {
  u64 max_q = 20;
  double max_T = 200.0;
};

struct ZeroReport {
  u64 q;
  double T;
  std::vector<double> sigma_grid;          // ascending
  std::vector<std::vector<long>> counts;   // [sigma][character index]
  std::vector<long> totals;
  std::vector<std::optional<double>> exponents;  // log total / log qT, empty when total is 0
  std::vector<double> prediction_corollary;      // (qT)^{7(1-s)/3}
  std::vector<double> prediction_density;        // (qT)^{4(1-s)/(1+s)}
  std::vector<double> ratios;                    // total / prediction_density
  std::vector<std::vector<LocatedZero>> zero_list;  // per character, at the smallest sigma
  bool monotone;
};

ZeroReport density_scan(u64 q, double T, std::vector<double> sigma_grid,
                        const DensityBudget& budget = {}, const ZeroCountOptions& opt = {});

struct ClassifyOptions {
  double threshold = 0.5;
  double small_t_constant = 1.0;  // zeros with |t| < A log(qT) are flagged
  double step = 0.05;
};

struct ZeroClassification {
  bool class_one;
  bool class_two;
  double class_one_magnitude;
  double class_two_magnitude;
  // |phi(q)/q M_X(1) Y^{1-rho} Gamma(1-rho)| for principal characters, else 0.
  double principal_term;
  // Consistency of the Mellin identity: e^{-1/Y} + sum versus integral/(2 pi) + principal term.
  double identity_residual;
  bool outside_dichotomy;
};

ZeroClassification classify_zero(cplx rho, const DirichletCharacter& chi, const MollifierSpec& mollifier,
                                  double T, const ClassifyOptions& opt = {});

}  // namespace lvlab
