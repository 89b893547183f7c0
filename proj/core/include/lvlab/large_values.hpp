#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lvlab/characters.hpp"
#include "lvlab/poly.hpp"

namespace lvlab {

inline constexpr double kDefaultEps = 0.05;
inline constexpr double kDefaultAlarm = 50.0;
inline constexpr std::size_t kEnergyCap = 10'000;

struct WPoint {
  double t = 0.0;
  std::size_t chi = 0;  // position in PointSet::characters
};

// A well-spaced set of (t, chi): same-character ordinates differ by >= delta.
struct PointSet {
  std::shared_ptr<const Modulus> modulus;
  std::vector<DirichletCharacter> characters;
  std::vector<WPoint> entries;
  double delta = 1.0;
  double T = 0.0;
  double V = 0.0;
  double sigma = 0.0;
  u64 N = 0;

  std::size_t size() const { return entries.size(); }
  u64 q() const { return modulus->q(); }
  const DirichletCharacter& chi_of(std::size_t i) const { return characters[entries[i].chi]; }
  // Empty string when all invariants hold, else the first violation.
  std::string violation() const;
};

struct ExtractOptions {
  double scan_step = 0.0;  // 0 selects delta / 4
  std::size_t memory_budget = kDefaultMemoryBudget;
};

// Greedy by decreasing |D| (ties: smaller t, then character order) over the grid
// -T, -T + step, ..., keeping per-character delta separation.
PointSet extract_W(const PolySpec& spec, const std::vector<DirichletCharacter>& characters, double T, double V,
                   double delta, const ExtractOptions& opts = {});

// Uniformly random well-spaced set, used by the ratio ensembles.
PointSet random_point_set(u64 q, std::size_t size, double T, double delta, u64 seed);

enum class Thm1Regime { below, low, high };

struct PredictedBounds {
  double mvt = 0.0;
  double hmh = 0.0;
  double thm1_low = 0.0;
  double thm1_high = 0.0;
  double eps_factor = 1.0;  // (qT)^eps
  Thm1Regime regime = Thm1Regime::below;
  // thm1_low or thm1_high according to the regime; NaN below (qT)^{3/4}
  double thm1() const;
};

PredictedBounds predicted_bounds(double N, double V, double q, double T, double eps = kDefaultEps);

// R(v, a) = sum over W of v^{it} chi(a).
class RFunction {
 public:
  explicit RFunction(const PointSet& W);

  std::complex<double> operator()(double v, i64 a) const;
  // sum_a over reduced residues of |R(v, a)|^k
  double residue_power_sum(double v, int k) const;
  const PointSet& set() const { return *W_; }

 private:
  // per-character partial sums sum_{t in W_chi} v^{it}
  void partial_sums(double v, std::vector<std::complex<double>>& out) const;

  const PointSet* W_;
  std::vector<std::vector<double>> ts_;                   // ordinates grouped by character
  std::vector<std::vector<std::complex<double>>> table_;  // chi(0..q-1) per character
  std::vector<i64> units_;
};

std::complex<double> r_eval(const PointSet& W, double v, i64 a);

// Square root of the window average of |R(u', a)|^2 over u' in [1/2, 2] with
// weight (N M2 / q) psi((N M2 / q)(u - u')), psi(x) = psi_0(x / (2 (qT)^eps)).
double r_tilde(const PointSet& W, double u, i64 a, double M2, double N, u64 q, double eps = kDefaultEps);

struct MomentReport {
  std::string kind;
  double raw = 0.0;
  double normalizer = 1.0;
  double ratio = 0.0;
  std::map<std::string, double> params;
};

// Set energy: ordered quadruples with |t1 + t2 - t3 - t4| <= 1, chi1 chi2 = chi3 chi4.
u64 energy(const PointSet& W, std::size_t cap = kEnergyCap);

// k = 2 against phi(q)|W| and k = 4 against phi(q)E(W), over v in [1/2, 2].
std::pair<MomentReport, MomentReport> continuous_moments(const PointSet& W, double M2);
std::pair<MomentReport, MomentReport> continuous_moments(const PointSet& W, double M2, u64 E);

struct DiscreteMoment {
  int k = 2;
  u64 M = 1;
  double D = 0.0;
  double total = 0.0;
  double small_gcd = 0.0;  // gcd(n1, n2) <= D
  double large_gcd = 0.0;
  u64 pairs = 0;
};

// sum over M < n1, n2 <= 2M coprime to q of |R(n1/n2, n1 n2^{-1})|^k
DiscreteMoment discrete_moment(const PointSet& W, u64 M, int k, double D, double budget = 4e9);

// Discrete moments for k in {2, 3, 4} with their bound ratios.
std::vector<MomentReport> discrete_moments(const PointSet& W, u64 M, double D, u64 E, double budget = 4e9);

struct HeathBrownReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool all_primitive = true;
};

// coeffs[n] is c_n (n in (M, 2M]); missing entries read as 0.
HeathBrownReport heath_brown_lhs(const PointSet& W, u64 M, const std::vector<std::complex<double>>& coeffs);

struct LocalConstancyReport {
  std::size_t samples = 0;
  double worst_constant = 0.0;  // smallest C that makes every sample pass
  std::size_t violations = 0;   // samples needing more than the allowed C
};

// |R(v, a)| <= C T int_{|v' - v| <= T^eps / T} |R(v', a)| dv' + 1 on random (v, a).
LocalConstancyReport local_constancy_check(const PointSet& W, std::size_t samples, u64 seed, double eps = kDefaultEps,
                                           double allowed = 10.0);

}  // namespace lvlab
