#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lvlab/characters.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/large_values.hpp"
#include "lvlab/poly.hpp"
#include "oracles.hpp"

using namespace lvlab;
using cd = std::complex<double>;

namespace {

PointSet single_point(u64 q, double t, std::size_t chi) {
  auto g = build_group(q);
  PointSet W;
  W.modulus = g.modulus;
  W.characters = g.characters;
  W.T = 100;
  W.delta = 1;
  W.entries.push_back({t, chi});
  return W;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("extract_W trivial cases") {
  auto g = build_group(1);
  PolySpec s;
  s.N = 50;
  s.source = CoeffSource::random_unimodular;
  s.seed = 1;
  CHECK(extract_W(s, g.characters, 100, 51, 1.0).size() == 0);
  // V = 0 with scan step delta: every grid point is accepted
  ExtractOptions o;
  o.scan_step = 2.0;
  auto W = extract_W(s, g.characters, 20, 0, 2.0, o);
  CHECK(W.size() == 21);
  CHECK(W.violation().empty());
  CHECK_THROWS_AS(extract_W(s, g.characters, 20, 1, 0.0), InvalidInput);
}

TEST_CASE("extract_W matches an exhaustive scan") {
  auto g = build_group(5);
  PolySpec s;
  s.N = 300;
  s.source = CoeffSource::random_unimodular;
  s.seed = 7;
  const double T = 200, delta = 1.0;
  // N^{3/4} sits about four standard deviations out and may select nothing,
  // so a lower threshold is compared as well
  for (const double V : {std::pow(300.0, 0.75), std::pow(300.0, 0.6)}) {
  CAPTURE(V);
  auto W = extract_W(s, g.characters, T, V, delta);
  CHECK(W.violation().empty());

  // oracle: naive sums on the same grid, greedy by magnitude
  struct C {
    double m, t;
    std::size_t k, r;
  };
  std::vector<C> cands;
  const double step = delta / 4;
  const std::size_t count = std::size_t(std::floor(2 * T / step + 1e-9)) + 1;
  DirichletPoly p(s);
  for (std::size_t r = 0; r < g.characters.size(); ++r)
    for (std::size_t k = 0; k < count; ++k) {
      const double t = -T + k * step;
      cd v = 0;
      for (std::size_t i = 0; i < p.size(); ++i)
        v += p.weights()[i] * g.characters[r](i64(p.n()[i])) * std::polar(1.0, t * std::log(double(p.n()[i])));
      if (std::abs(v) >= V) cands.push_back({std::abs(v), t, k, r});
    }
  std::sort(cands.begin(), cands.end(), [](const C& a, const C& b) {
    if (a.m != b.m) return a.m > b.m;
    if (a.k != b.k) return a.k < b.k;
    return a.r < b.r;
  });
  std::vector<std::pair<double, std::size_t>> kept;
  for (const auto& c : cands) {
    bool ok = true;
    for (const auto& [t, r] : kept)
      if (r == c.r && std::fabs(t - c.t) < delta - 1e-9) ok = false;
    if (ok) kept.push_back({c.t, c.r});
  }
  REQUIRE(W.size() == kept.size());
  if (V < 40) CHECK(W.size() > 0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CHECK(W.entries[i].t == doctest::Approx(kept[i].first).epsilon(1e-12));
    CHECK(W.entries[i].chi == kept[i].second);
    CHECK(std::abs(eval_poly(s, W.chi_of(i), W.entries[i].t)) >= V);
  }
  // upper-bound sanity against the mean value prediction
  const auto b = predicted_bounds(300, V, 5, T);
  CHECK(double(W.size()) <= 20 * b.mvt * b.eps_factor);
  }
}

TEST_CASE("predicted bounds") {
  const double qT = 1e4, N = std::pow(qT, 0.8), V = std::pow(N, 0.75);
  auto b = predicted_bounds(N, V, 1, qT);
  const double two5 = std::pow(qT, 0.4), three5 = std::pow(qT, 0.6);
  CHECK(b.mvt == doctest::Approx(two5 + three5).epsilon(1e-12));
  CHECK(b.hmh == doctest::Approx(two5 + three5).epsilon(1e-12));
  CHECK(b.thm1_low == doctest::Approx(std::pow(qT, 8.0 / 15) + two5).epsilon(1e-12));
  CHECK(b.regime == Thm1Regime::low);
  CHECK(b.thm1() == b.thm1_low);
  auto e = predicted_bounds(50, 50, 3, 7);
  CHECK(e.mvt - 3 * 7 * 50.0 / 2500 == doctest::Approx(1.0).epsilon(1e-14));
  // q = 1, T = 1e4, N = T^{5/6}, V = N^{3/4}
  const double N2 = std::pow(1e4, 5.0 / 6), V2 = std::pow(N2, 0.75);
  auto c = predicted_bounds(N2, V2, 1, 1e4);
  CHECK(c.mvt == doctest::Approx(261.859357339316161).epsilon(1e-12));
  CHECK(c.hmh == doctest::Approx(261.859357339316161).epsilon(1e-12));
  CHECK(c.thm1_low == doctest::Approx(146.415888336127789).epsilon(1e-12));
  CHECK(c.thm1_high == doctest::Approx(259.598706064131228).epsilon(1e-12));
  CHECK(std::isnan(predicted_bounds(10, 5, 1, 1e4).thm1()));
  CHECK(predicted_bounds(1e4, 5, 1, 1e4).regime == Thm1Regime::high);
  CHECK(b.eps_factor == doctest::Approx(std::pow(qT, 0.05)));
  CHECK_THROWS_AS(predicted_bounds(0, 1, 1, 1), InvalidInput);
}

TEST_CASE("R function") {
  auto W = random_point_set(7, 15, 80, 1.0, 3);
  CHECK(W.violation().empty());
  CHECK(std::abs(r_eval(W, 1, 1) - double(W.size())) < 1e-12);
  RFunction R(W);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> vv(0.5, 2);
  double worst = 0, worst_naive = 0;
  for (int i = 0; i < 1000; ++i) {
    const double v = vv(rng);
    const i64 a = 1 + i64(rng() % 6);
    const i64 ainv = mod_inverse(a, 7);
    worst = std::max(worst, std::abs(R(1 / v, ainv) - std::conj(R(v, a))));
    worst_naive = std::max(worst_naive, std::abs(R(v, a) - oracle::r_value(W, v, a)));
    CHECK(std::abs(R(v, a)) <= double(W.size()) + 1e-9);
  }
  CHECK(worst < 1e-10);
  CHECK(worst_naive < 1e-10);
  // non-units drop out
  CHECK(std::abs(R(1.3, 14)) == 0.0);
  double ps = 0;
  for (i64 a = 1; a < 7; ++a) ps += std::pow(std::abs(oracle::r_value(W, 1.3, a)), 4);
  CHECK(R.residue_power_sum(1.3, 4) == doctest::Approx(ps).epsilon(1e-12));
}

TEST_CASE("R tilde with a window covering the whole range") {
  auto W = random_point_set(5, 8, 30, 1.0, 11);
  const double N = 1, M2 = 1e-3;
  const u64 q = 5;
  const double scale = N * M2 / q;
  for (i64 a : {1, 2}) {
    const double direct =
        std::sqrt(scale * simpson([&](double v) { return std::norm(oracle::r_value(W, v, a)); }, 0.5, 2.0, 20000));
    CHECK(r_tilde(W, 1.2, a, M2, N, q) == doctest::Approx(direct).epsilon(1e-6));
  }
  CHECK(r_tilde(W, 1.2, 1, 50, 1000, q) >= 0.0);
  CHECK_THROWS_AS(r_tilde(W, 1.2, 1, 0, N, q), InvalidInput);
}

TEST_CASE("energy") {
  auto one = single_point(5, 3.0, 1);
  CHECK(energy(one) == 1);
  for (u64 seed = 0; seed < 12; ++seed) {
    const u64 q = seed % 3 == 0 ? 1 : (seed % 3 == 1 ? 5 : 12);
    const std::size_t n = 6 + seed * 2;
    auto W = random_point_set(q, n, 6.0 + seed, 0.5, seed);
    const u64 e = energy(W);
    CHECK(e == oracle::energy(W));
    CHECK(e >= n * n);
  }
  auto W25 = random_point_set(5, 25, 10, 0.5, 99);
  CHECK(energy(W25) == oracle::energy(W25));
  // closed boundary: t1 + t2 - t3 - t4 exactly 1
  auto g = build_group(1);
  PointSet P;
  P.modulus = g.modulus;
  P.characters = g.characters;
  P.T = 10;
  P.entries = {{0.0, 0}, {1.0, 0}};
  CHECK(energy(P) == 14);  // only the sums 0 and 2 are too far apart
  CHECK_THROWS_AS(energy(W25, 10), BudgetExceeded);
}

TEST_CASE("continuous moments") {
  for (u64 q : {1, 5, 12}) {
    auto W = single_point(q, 4.0, 0);
    auto [m2, m4] = continuous_moments(W, 1.0);
    const double phi = double(euler_phi(q));
    CHECK(m2.raw == doctest::Approx(1.5 * phi).epsilon(1e-10));
    CHECK(m2.ratio == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(m4.raw == doctest::Approx(1.5 * phi).epsilon(1e-10));
  }
  auto W = random_point_set(5, 12, 100, 1.0, 5);
  auto [m2, m4] = continuous_moments(W, 1.0);
  CHECK(m2.ratio < 10);
  CHECK(m2.raw >= 0);
  // oracle by Simpson on the naive R
  const double ref = simpson(
      [&](double v) {
        double s = 0;
        for (i64 a = 1; a < 5; ++a) s += std::norm(oracle::r_value(W, v, a));
        return s;
      },
      0.5, 2.0, 40000);
  CHECK(m2.raw == doctest::Approx(ref).epsilon(1e-8));
  CHECK(m4.ratio == doctest::Approx(m4.raw / (4.0 * double(energy(W)))));
  PointSet empty = W;
  empty.entries.clear();
  CHECK_THROWS_AS(continuous_moments(empty, 1.0), InvalidInput);
}

TEST_CASE("discrete moments") {
  auto W = random_point_set(5, 9, 50, 1.0, 21);
  // window {2}: only the pair (2, 2)
  for (int k : {2, 3, 4}) {
    auto d = discrete_moment(W, 1, k, 10);
    CHECK(d.pairs == 1);
    CHECK(d.total == doctest::Approx(std::pow(9.0, k)).epsilon(1e-12));
  }
  auto big = discrete_moment(W, 40, 3, 80);
  CHECK(big.large_gcd == 0.0);
  CHECK(big.total == big.small_gcd);

  auto d2 = discrete_moment(W, 40, 2, 3);
  const double naive = oracle::discrete_moment(W, 40, 2);
  CHECK(d2.total == doctest::Approx(naive).epsilon(1e-8));
  CHECK(d2.total == d2.small_gcd + d2.large_gcd);
  auto d3 = discrete_moment(W, 40, 3, 3);
  CHECK(d3.total == d3.small_gcd + d3.large_gcd);
  CHECK(d3.large_gcd > 0);

  const u64 E = energy(W);
  auto reps = discrete_moments(W, 40, 3, E);
  CHECK(reps.size() >= 4);
  for (const auto& r : reps) {
    CHECK(r.raw >= 0);
    if (r.normalizer > 0) CHECK(r.ratio == doctest::Approx(r.raw / r.normalizer));
  }
  CHECK_THROWS_AS(discrete_moment(W, 40, 5, 3), InvalidInput);
  CHECK_THROWS_AS(discrete_moment(W, 4000, 2, 3, 1e6), BudgetExceeded);
}

TEST_CASE("Heath-Brown double sum") {
  auto one = single_point(5, 2.0, 1);
  const u64 M = 64;
  std::vector<cd> ones(2 * M + 1, 1.0), zeros(2 * M + 1, 0.0);
  double s = 0;
  for (u64 n = M + 1; n <= 2 * M; ++n)
    if (n % 5) s += 1 / std::sqrt(double(n));
  CHECK(heath_brown_lhs(one, M, ones).lhs == doctest::Approx(s * s).epsilon(1e-12));
  auto W = random_point_set(5, 10, 60, 1.0, 4);
  CHECK(heath_brown_lhs(W, M, zeros).lhs == 0.0);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0, 6.283185307179586);
  std::vector<cd> c(2 * M + 1);
  for (auto& x : c) x = std::polar(1.0, ang(rng));
  double naive = 0;
  for (const auto& e1 : W.entries)
    for (const auto& e2 : W.entries) {
      cd acc = 0;
      for (u64 n = M + 1; n <= 2 * M; ++n)
        acc += c[n] * W.characters[e1.chi](i64(n)) * std::conj(W.characters[e2.chi](i64(n))) *
               std::pow(double(n), -0.5) * std::polar(1.0, (e1.t - e2.t) * std::log(double(n)));
      naive += std::norm(acc);
    }
  const auto rep = heath_brown_lhs(W, M, c);
  CHECK(rep.lhs == doctest::Approx(naive).epsilon(1e-8));
  const double w = 10;
  CHECK(rep.rhs == doctest::Approx(w * M + w * w + std::pow(w, 1.25) * std::sqrt(5 * 60.0)).epsilon(1e-12));
  // principal mod 5 is not primitive
  bool has_principal = false;
  for (const auto& e : W.entries) has_principal |= e.chi == 0;
  CHECK(rep.all_primitive == !has_principal);
}

TEST_CASE("local constancy at scale 1/T") {
  auto W = random_point_set(5, 10, 100, 1.0, 17);
  auto rep = local_constancy_check(W, 100, 2);
  CHECK(rep.samples == 100);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_constant <= 10.0);
}
