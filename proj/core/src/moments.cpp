#include <algorithm>
#include <cmath>
#include <string>

#include "lvlab/errors.hpp"
#include "lvlab/large_values.hpp"
#include "lvlab/parallel.hpp"
#include "lvlab/quadrature.hpp"

namespace lvlab {

u64 energy(const PointSet& W, std::size_t cap) {
  const std::size_t n = W.size();
  if (n > cap) throw BudgetExceeded("energy: |W| = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 0) return 0;
  const Modulus& mod = *W.modulus;
  const auto& orders = mod.orders();
  // product character of each ordered pair, as a group index
  struct Pair {
    u64 key;
    double sum;
  };
  std::vector<Pair> pairs(n * n);
  std::vector<u64> ex(orders.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ei = W.chi_of(i).exponents();
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ej = W.chi_of(j).exponents();
      for (std::size_t r = 0; r < orders.size(); ++r) ex[r] = (ei[r] + ej[r]) % orders[r];
      pairs[i * n + j] = {mod.index_of(ex), W.entries[i].t + W.entries[j].t};
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.key != b.key ? a.key < b.key : a.sum < b.sum;
  });
  u64 total = 0;
  std::size_t g0 = 0;
  while (g0 < pairs.size()) {
    std::size_t g1 = g0;
    while (g1 < pairs.size() && pairs[g1].key == pairs[g0].key) ++g1;
    // window [lo, hi) of partners with |s_P - s_Q| <= 1; both ends only move right
    std::size_t lo = g0, hi = g0;
    for (std::size_t p = g0; p < g1; ++p) {
      const double s = pairs[p].sum;
      while (lo < g1 && std::fabs(s - pairs[lo].sum) > 1.0 && pairs[lo].sum < s) ++lo;
      if (hi < lo) hi = lo;
      while (hi < g1 && std::fabs(s - pairs[hi].sum) <= 1.0) ++hi;
      total += hi - lo;
    }
    g0 = g1;
  }
  return total;
}

std::pair<MomentReport, MomentReport> continuous_moments(const PointSet& W, double M2, u64 E) {
  if (W.size() == 0) throw InvalidInput("continuous_moments: W is empty");
  RFunction R(W);
  const double phi = static_cast<double>(W.modulus->phi());
  const double w = static_cast<double>(W.size());
  const auto panels = static_cast<std::size_t>(std::max(8.0, std::ceil(std::max(W.T, 1.0) / 2.0)));
  auto run = [&](int k, double normalizer, const char* kind) {
    auto f = [&](double v) { return R.residue_power_sum(v, k); };
    auto res = integrate_adaptive(f, {0.5, 2.0}, panels, 1e-10, 1e-13 * phi * std::pow(w, k), 10);
    MomentReport m;
    m.kind = kind;
    m.raw = res.value;
    m.normalizer = normalizer;
    m.ratio = res.value / normalizer;
    m.params = {{"M2", M2}, {"k", k}, {"q", static_cast<double>(W.q())}, {"W", w}};
    return m;
  };
  return {run(2, phi * w, "second_moment"), run(4, phi * static_cast<double>(E), "fourth_moment")};
}

std::pair<MomentReport, MomentReport> continuous_moments(const PointSet& W, double M2) {
  return continuous_moments(W, M2, energy(W));
}

DiscreteMoment discrete_moment(const PointSet& W, u64 M, int k, double D, double budget) {
  if (M < 1) throw InvalidInput("discrete_moment: M must be >= 1");
  if (k < 2 || k > 4) throw InvalidInput("discrete_moment: k must be 2, 3 or 4");
  const u64 q = W.q();
  std::vector<u64> ns;
  for (u64 n = M + 1; n <= 2 * M; ++n)
    if (gcd_u(n, q) == 1) ns.push_back(n);
  const std::size_t m = ns.size(), w = W.size();
  const double cost = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(std::max<std::size_t>(w, 1));
  if (cost > budget)
    throw BudgetExceeded("discrete_moment: " + std::to_string(cost) + " operations exceed budget " +
                             std::to_string(budget),
                         static_cast<std::size_t>(m * w * sizeof(std::complex<double>)));
  // B[n][j] = chi_j(n) n^{i t_j}; R(n1/n2, n1 n2^{-1}) = sum_j B[n1][j] conj(B[n2][j])
  std::vector<std::vector<std::complex<double>>> tables(W.characters.size());
  for (const auto& e : W.entries)
    if (tables[e.chi].empty()) tables[e.chi] = W.characters[e.chi].value_table();
  std::vector<std::complex<double>> B(m * w);
  for (std::size_t a = 0; a < m; ++a) {
    double ln = std::log(static_cast<double>(ns[a]));
    for (std::size_t j = 0; j < w; ++j) {
      const auto& e = W.entries[j];
      B[a * w + j] = tables[e.chi][ns[a] % q] * std::polar(1.0, e.t * ln);
    }
  }
  std::vector<double> small(m, 0.0), large(m, 0.0);
  parallel_for(m, [&](std::size_t a) {
    double s = 0.0, l = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      std::complex<double> r;
      for (std::size_t j = 0; j < w; ++j) r += B[a * w + j] * std::conj(B[b * w + j]);
      double r2 = std::norm(r);
      double val = k == 2 ? r2 : (k == 4 ? r2 * r2 : r2 * std::sqrt(r2));
      if (static_cast<double>(gcd_u(ns[a], ns[b])) <= D)
        s += val;
      else
        l += val;
    }
    small[a] = s;
    large[a] = l;
  });
  DiscreteMoment out;
  out.k = k;
  out.M = M;
  out.D = D;
  out.pairs = static_cast<u64>(m) * m;
  for (std::size_t a = 0; a < m; ++a) {
    out.small_gcd += small[a];
    out.large_gcd += large[a];
  }
  out.total = out.small_gcd + out.large_gcd;
  return out;
}

std::vector<MomentReport> discrete_moments(const PointSet& W, u64 M, double D, u64 E, double budget) {
  const double w = static_cast<double>(W.size()), Md = static_cast<double>(M), Ed = static_cast<double>(E);
  const double qT = static_cast<double>(W.q()) * W.T;
  auto make = [&](const std::string& kind, double raw, double norm, int k) {
    MomentReport r;
    r.kind = kind;
    r.raw = raw;
    r.normalizer = norm;
    r.ratio = norm > 0.0 ? raw / norm : 0.0;
    r.params = {{"M", Md}, {"D", D}, {"k", k}};
    return r;
  };
  std::vector<MomentReport> out;
  auto d2 = discrete_moment(W, M, 2, D, budget);
  out.push_back(make("discrete_second", d2.total, w * Md * Md + w * w * Md + std::pow(w, 1.25) * std::sqrt(qT) * Md, 2));
  auto d3 = discrete_moment(W, M, 3, D, budget);
  out.push_back(make("small_gcd_third", d3.small_gcd, (D * qT + Md * Md) * std::sqrt(w * Ed), 3));
  out.push_back(make("large_gcd_third", d3.large_gcd,
                     Md * w * w * w + Md * std::pow(qT, 0.25) * std::pow(w, 21.0 / 8.0) + std::sqrt(Ed * w) * Md * Md,
                     3));
  if (W.sigma > 0.0)
    out.push_back(make("energy_vs_third", Ed, std::pow(Md, -2.0 * W.sigma) * d3.total, 3));
  auto d4 = discrete_moment(W, M, 4, D, budget);
  out.push_back(make("discrete_fourth", d4.total, Ed * Md * Md + std::pow(w, 4) * Md + std::pow(Ed, 0.75) * w * std::sqrt(qT) * Md, 4));
  return out;
}

}  // namespace lvlab
