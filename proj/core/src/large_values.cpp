#include "lvlab/large_values.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include "lvlab/bump.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/quadrature.hpp"

namespace lvlab {

std::string PointSet::violation() const {
  if (!modulus) return "point set has no modulus";
  if (V < 0.0) return "negative threshold V";
  std::vector<std::vector<double>> by_chi(characters.size());
  for (const auto& e : entries) {
    if (e.chi >= characters.size()) return "character position out of range";
    if (std::fabs(e.t) > T * (1.0 + 1e-12)) return "ordinate beyond T: " + std::to_string(e.t);
    by_chi[e.chi].push_back(e.t);
  }
  const double need = delta * (1.0 - 1e-9);
  for (auto& ts : by_chi) {
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (ts[i] - ts[i - 1] < need) return "separation violated near t=" + std::to_string(ts[i]);
  }
  return {};
}

PointSet extract_W(const PolySpec& spec, const std::vector<DirichletCharacter>& characters, double T, double V,
                   double delta, const ExtractOptions& opts) {
  if (!(delta > 0.0)) throw InvalidInput("extract_W: delta must be positive");
  if (!(V >= 0.0)) throw InvalidInput("extract_W: V must be nonnegative");
  if (!(T >= 0.0)) throw InvalidInput("extract_W: T must be nonnegative");
  if (characters.empty()) throw InvalidInput("extract_W: no characters");
  const double step = opts.scan_step > 0.0 ? opts.scan_step : delta / 4.0;
  const auto count = static_cast<std::size_t>(std::floor(2.0 * T / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = -T + static_cast<double>(k) * step;

  DirichletPoly poly(spec);
  GridValues vals = eval_grid(poly, characters, grid, opts.memory_budget);

  struct Cand {
    double mag;
    std::size_t k;
    std::size_t row;
  };
  std::vector<Cand> cands;
  for (std::size_t r = 0; r < vals.rows; ++r)
    for (std::size_t k = 0; k < count; ++k) {
      double m = std::abs(vals.at(r, k));
      if (m >= V) cands.push_back({m, k, r});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.mag != b.mag) return a.mag > b.mag;
    if (a.k != b.k) return a.k < b.k;
    return a.row < b.row;
  });

  // separation measured in grid steps so that rounding in t cannot matter
  const auto gap = static_cast<std::size_t>(std::ceil(delta / step - 1e-9));
  std::vector<std::set<std::size_t>> taken(characters.size());
  PointSet W;
  W.modulus = characters.front().modulus_ptr();
  W.characters = characters;
  W.delta = delta;
  W.T = T;
  W.V = V;
  W.N = spec.N;
  W.sigma = (V > 0.0 && spec.N > 1) ? std::log(V) / std::log(static_cast<double>(spec.N)) : 0.0;
  for (const auto& c : cands) {
    auto& s = taken[c.row];
    auto it = s.lower_bound(c.k);
    if (it != s.end() && *it - c.k < gap) continue;
    if (it != s.begin() && c.k - *std::prev(it) < gap) continue;
    s.insert(c.k);
    W.entries.push_back({grid[c.k], c.row});
  }
  return W;
}

PointSet random_point_set(u64 q, std::size_t size, double T, double delta, u64 seed) {
  if (!(T > 0.0) || !(delta > 0.0)) throw InvalidInput("random_point_set: T and delta must be positive");
  auto group = build_group(q);
  PointSet W;
  W.modulus = group.modulus;
  W.characters = std::move(group.characters);
  W.delta = delta;
  W.T = T;
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> used(W.characters.size());
  std::size_t attempts = 0;
  while (W.entries.size() < size) {
    if (++attempts > 1000 * (size + 1)) throw InvalidInput("random_point_set: cannot place points at this spacing");
    std::size_t c = rng() % W.characters.size();
    double t = -T + 2.0 * T * unit_interval(rng());
    bool ok = std::all_of(used[c].begin(), used[c].end(), [&](double s) { return std::fabs(s - t) >= delta; });
    if (!ok) continue;
    used[c].push_back(t);
    W.entries.push_back({t, c});
  }
  return W;
}

double PredictedBounds::thm1() const {
  switch (regime) {
    case Thm1Regime::low: return thm1_low;
    case Thm1Regime::high: return thm1_high;
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

PredictedBounds predicted_bounds(double N, double V, double q, double T, double eps) {
  if (!(N > 0.0 && V > 0.0 && q > 0.0 && T > 0.0)) throw InvalidInput("predicted_bounds: N, V, q, T must be positive");
  const double lx = std::log(q * T), ln = std::log(N), lv = std::log(V);
  auto term = [&](double ex, double en, double ev) { return std::exp(ex * lx + en * ln + ev * lv); };
  PredictedBounds b;
  const double base = term(0, 2, -2);
  b.mvt = base + term(1, 1, -2);
  b.hmh = base + term(1, 4, -6);
  b.thm1_low = base + term(4.0 / 3.0, 2, -4);
  b.thm1_high = base + term(0, 5, -6) + term(0.5, 3, -4) + term(2.0 / 19.0, 80.0 / 19.0, -96.0 / 19.0);
  b.eps_factor = std::exp(eps * lx);
  if (ln < 0.75 * lx)
    b.regime = Thm1Regime::below;
  else if (ln <= 5.0 / 6.0 * lx)
    b.regime = Thm1Regime::low;
  else
    b.regime = Thm1Regime::high;
  return b;
}

RFunction::RFunction(const PointSet& W) : W_(&W) {
  const u64 q = W.q();
  std::vector<std::size_t> slot(W.characters.size(), SIZE_MAX);
  for (const auto& e : W.entries) {
    if (slot[e.chi] == SIZE_MAX) {
      slot[e.chi] = ts_.size();
      ts_.emplace_back();
      table_.push_back(W.characters[e.chi].value_table());
    }
    ts_[slot[e.chi]].push_back(e.t);
  }
  for (u64 a = 1; a <= q; ++a)
    if (gcd_u(a, q) == 1) units_.push_back(static_cast<i64>(a));
}

void RFunction::partial_sums(double v, std::vector<std::complex<double>>& out) const {
  const double lv = std::log(v);
  out.assign(ts_.size(), {});
  for (std::size_t c = 0; c < ts_.size(); ++c) {
    double re = 0.0, im = 0.0;
    for (double t : ts_[c]) {
      re += std::cos(t * lv);
      im += std::sin(t * lv);
    }
    out[c] = {re, im};
  }
}

std::complex<double> RFunction::operator()(double v, i64 a) const {
  if (!(v > 0.0)) throw InvalidInput("R: v must be positive");
  std::vector<std::complex<double>> s;
  partial_sums(v, s);
  const auto r = static_cast<std::size_t>(mod_floor(a, static_cast<i64>(W_->q())));
  std::complex<double> total;
  for (std::size_t c = 0; c < s.size(); ++c) total += table_[c][r] * s[c];
  return total;
}

double RFunction::residue_power_sum(double v, int k) const {
  std::vector<std::complex<double>> s;
  partial_sums(v, s);
  double total = 0.0;
  for (i64 a : units_) {
    std::complex<double> r;
    for (std::size_t c = 0; c < s.size(); ++c) r += table_[c][static_cast<std::size_t>(a) % table_[c].size()] * s[c];
    total += std::pow(std::abs(r), k);
  }
  return total;
}

std::complex<double> r_eval(const PointSet& W, double v, i64 a) { return RFunction(W)(v, a); }

double r_tilde(const PointSet& W, double u, i64 a, double M2, double N, u64 q, double eps) {
  if (!(M2 > 0.0)) throw InvalidInput("r_tilde: M2 must be positive");
  if (!(N > 0.0) || q == 0) throw InvalidInput("r_tilde: N and q must be positive");
  const double scale = N * M2 / static_cast<double>(q);
  const double dil = 2.0 * std::pow(static_cast<double>(q) * std::max(W.T, 1.0), eps);
  const Bump& psi0 = default_psi0();
  const double reach = psi0.hi() * dil / scale, flat = psi0.plateau_hi() * dil / scale;
  const double lo = std::max(0.5, u - reach), hi = std::min(2.0, u + reach);
  if (!(hi > lo)) return 0.0;
  std::vector<double> br{lo};
  for (double x : {u - flat, u + flat})
    if (x > lo && x < hi) br.push_back(x);
  br.push_back(hi);
  RFunction R(W);
  auto f = [&](double up) { return std::norm(R(up, a)) * scale * psi0(scale * (u - up) / dil); };
  auto panels = static_cast<std::size_t>(std::max(4.0, std::ceil((hi - lo) * std::max(W.T, 1.0))));
  double tiny = 1e-14 * static_cast<double>(W.size() * W.size()) * scale;
  auto res = integrate_adaptive(f, br, panels, 1e-10, tiny, 10);
  return std::sqrt(std::max(0.0, res.value));
}

HeathBrownReport heath_brown_lhs(const PointSet& W, u64 M, const std::vector<std::complex<double>>& coeffs) {
  if (M < 1) throw InvalidInput("heath_brown_lhs: M must be >= 1");
  const std::size_t n_pts = W.size();
  HeathBrownReport rep;
  for (const auto& e : W.entries)
    if (!W.characters[e.chi].is_primitive()) rep.all_primitive = false;
  std::vector<std::vector<std::complex<double>>> tables(W.characters.size());
  for (const auto& e : W.entries)
    if (tables[e.chi].empty()) tables[e.chi] = W.characters[e.chi].value_table();
  const u64 q = W.q();
  // B[n][i] = chi_i(n) n^{i t_i}; weight c_n n^{-1/2}
  std::vector<u64> ns;
  std::vector<std::complex<double>> cw;
  double cmax2 = 0.0;
  for (u64 n = M + 1; n <= 2 * M; ++n) {
    std::complex<double> c = n < coeffs.size() ? coeffs[n] : 0.0;
    cmax2 = std::max(cmax2, std::norm(c));
    if (c == 0.0 || gcd_u(n, q) != 1) continue;
    ns.push_back(n);
    cw.push_back(c / std::sqrt(static_cast<double>(n)));
  }
  std::vector<std::complex<double>> B(ns.size() * n_pts);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    double ln = std::log(static_cast<double>(ns[k]));
    for (std::size_t i = 0; i < n_pts; ++i) {
      const auto& e = W.entries[i];
      B[k * n_pts + i] = tables[e.chi][ns[k] % q] * std::polar(1.0, e.t * ln);
    }
  }
  double lhs = 0.0;
  for (std::size_t i = 0; i < n_pts; ++i)
    for (std::size_t j = 0; j < n_pts; ++j) {
      std::complex<double> s;
      for (std::size_t k = 0; k < ns.size(); ++k) s += cw[k] * B[k * n_pts + i] * std::conj(B[k * n_pts + j]);
      lhs += std::norm(s);
    }
  const double w = static_cast<double>(n_pts), qT = static_cast<double>(q) * W.T;
  rep.lhs = lhs;
  rep.rhs = (w * static_cast<double>(M) + w * w + std::pow(w, 1.25) * std::sqrt(qT)) * cmax2;
  rep.ratio = rep.rhs > 0.0 ? lhs / rep.rhs : 0.0;
  return rep;
}

LocalConstancyReport local_constancy_check(const PointSet& W, std::size_t samples, u64 seed, double eps,
                                           double allowed) {
  LocalConstancyReport rep;
  if (W.size() == 0 || !(W.T > 0.0)) return rep;
  RFunction R(W);
  std::vector<i64> units;
  for (u64 a = 1; a <= W.q(); ++a)
    if (gcd_u(a, W.q()) == 1) units.push_back(static_cast<i64>(a));
  std::mt19937_64 rng(seed);
  const double T = W.T, h = std::pow(T, eps) / T;
  for (std::size_t s = 0; s < samples; ++s) {
    double v = 0.5 + 1.5 * unit_interval(rng());
    i64 a = units[rng() % units.size()];
    double lhs = std::abs(R(v, a));
    auto f = [&](double x) { return std::abs(R(x, a)); };
    // |R| has kinks at its zeros, so a fixed fine rule beats doubling here
    auto panels = static_cast<std::size_t>(std::max(64.0, 8.0 * std::ceil(2.0 * h * T)));
    double integral = composite_gl(f, {v - h, v + h}, panels);
    double need = lhs > 1.0 ? (lhs - 1.0) / (T * integral) : 0.0;
    rep.worst_constant = std::max(rep.worst_constant, need);
    if (need > allowed) ++rep.violations;
    ++rep.samples;
  }
  return rep;
}

}  // namespace lvlab
