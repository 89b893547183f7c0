#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lvlab/large_values.hpp"

namespace lvlab {

struct SpectralBudget {
  std::size_t max_points = 64;    // |W| for the Gram matrix
  u64 max_N = 10'000;
  u64 max_q_lattice = 30;         // modulus cap for lattice sums
  std::size_t max_points_lattice = 20;
  std::size_t max_lattice = 1'000'000;  // number of m-triples
};

// Dense square complex matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<std::complex<double>> a;
  std::complex<double>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct SingularValue {
  double s1 = 0.0;
  double lambda = 0.0;  // s1^2, the top eigenvalue of G
  int iterations = 0;
  int restarts = 0;
  bool converged = false;
};

// Power iteration from the normalised all-ones vector; stops when the Rayleigh
// quotient changes by < 1e-10 relative or after max_iter steps.
SingularValue largest_singular_value(const SquareMatrix& G, int max_iter = 10'000, double tol = 1e-10);

struct GramData {
  u64 N = 0;
  u64 q = 1;
  std::size_t size = 0;
  SquareMatrix G;  // G[i][j] = sum_n w(n/N)^2 chi_i conj(chi_j)(n) n^{i(t_i - t_j)}
  double tr_G = 0.0;
  double tr_G3 = 0.0;
  SingularValue top;
};

GramData build_gram(const PointSet& W, u64 N, const SpectralBudget& budget = {});

struct TraceReport {
  double tr_G = 0.0;
  double est1_main = 0.0;      // phi(q) N |W| ||w||^2 / q
  double est1_residual = 0.0;  // tr_G - main
  double est1_budget = 0.0;    // q |W| / N^{1 - eps}
  double tr_G3 = 0.0;
  double est3_main = 0.0;      // phi(q)^3 N^3 |W| ||w||^6 / q^3
  double jensen_gap = 0.0;     // tr_G3 - tr_G^3 / |W|^2, >= 0 in exact arithmetic
  double s1 = 0.0;
  double lsvt_plus = 0.0;      // 2 gap^{1/6} + 2 (tr_G / |W|)^{1/2}
  double lsvt_minus = 0.0;     // 2 gap^{1/6} - 2 (tr_G / |W|)^{1/2}, as printed
  bool lsvt_plus_holds = false;
  bool lsvt_minus_holds = false;
};

TraceReport trace_identities(const GramData& gram, double eps = kDefaultEps);

// Per-pair factors A_ij(m) = (N/q) sum_a chi_i conj(chi_j)(a) e(am/q) hhat_{t_i - t_j}(Nm/q)
// for |m| <= reach; I_m = tr(A(m1) A(m2) A(m3)).
class LatticeFactors {
 public:
  LatticeFactors(const PointSet& W, u64 N, int reach, const SpectralBudget& budget = {});

  int reach() const { return reach_; }
  std::size_t size() const { return n_; }
  const SquareMatrix& at(int m) const { return mats_[static_cast<std::size_t>(m + reach_)]; }
  std::complex<double> I(int m1, int m2, int m3) const;

 private:
  std::size_t n_;
  int reach_;
  std::vector<SquareMatrix> mats_;
};

struct LatticeTermIm {
  std::array<int, 3> m{0, 0, 0};
  std::complex<double> value;
  // Frobenius norms of the three pair-factor matrices
  std::array<double, 3> factor_norms{0.0, 0.0, 0.0};
};

LatticeTermIm compute_Im(const PointSet& W, u64 N, std::array<int, 3> m, const SpectralBudget& budget = {});

// ceil((qT)^eps qT / N)
int lattice_cutoff(u64 q, double T, u64 N, double eps = kDefaultEps);

struct Decomposition {
  int cutoff = 0;
  std::complex<double> I0, S1, S2, S3;
  std::array<std::size_t, 4> counts{0, 0, 0, 0};  // terms per number of nonzero coordinates
  double tr_G3 = 0.0;
  double residual = 0.0;  // tr_G3 - Re(I0 + S1 + S2 + S3)
  double ratio_S1 = 0.0;  // |S1| / (q N |W|)
  double ratio_S2 = 0.0;  // |S2| / (q T N |W|^{7/4})
  double ratio_S3 = 0.0;  // |S3| / ((qT)^2 |W|^{3/2})
};

Decomposition decompose_S(const PointSet& W, u64 N, double eps = kDefaultEps, const SpectralBudget& budget = {},
                          const GramData* gram = nullptr, int cutoff_override = -1);

// Smooth nonnegative profile amplitude * psi_0(2 (u - center) / radius),
// supported on |u - center| <= radius.
struct AffineProfile {
  double amplitude = 1.0;
  double center = 0.0;
  double radius = 1.0;
  double operator()(double u) const;
  double l1() const;
  double l2_sq() const;
};

struct AffineSumSpec {
  u64 q = 3;
  u64 M = 3;
  std::vector<AffineProfile> profiles;  // one per reduced residue b, in increasing b
};

struct AffineReport {
  double J = 0.0;
  std::array<u64, 3> argmax{0, 0, 0};  // dyadic M1, M2, M3 attaining J
  double rhs = 0.0;
  double ratio = 0.0;
};

// Integral over u of sum_a (sum_b sum_m f_b((m1 u + m3)/m2) gcd(a m1 + b m2 + m3, q))^2
// for M1 < |m1| <= 2M1, M2 < m2 <= 2M2, |m3| <= M3.
double j_affine_fixed(const AffineSumSpec& spec, u64 M1, u64 M2, u64 M3);
// Supremum over dyadic M_i in {1, 2, 4, ...} below M.
AffineReport j_affine(const AffineSumSpec& spec, double budget = 5e8);
AffineReport bsoat_check(const AffineSumSpec& spec, double budget = 5e8);

struct RtlsReport {
  double bound = 0.0;  // N^{1 - 2 sigma} s1^2
  double ratio = 0.0;  // |W| / bound
  bool holds = false;  // ratio <= 72
};

RtlsReport rtls_check(std::size_t W_size, u64 N, double sigma, double s1, double constant = 72.0);

}  // namespace lvlab
