#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lvlab/characters.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/lfunc.hpp"
#include "lvlab/poly.hpp"

using namespace lvlab;
using std::numbers::pi;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

const DirichletCharacter& find_char(const CharacterGroup& g, const std::vector<int>& values) {
  for (const auto& c : g.characters) {
    bool ok = true;
    for (std::size_t n = 0; n < values.size(); ++n) ok = ok && std::abs(c(i64(n)) - double(values[n])) < 1e-12;
    if (ok) return c;
  }
  throw std::runtime_error("character not found");
}

// Alternating series with repeated averaging of partial sums.
cplx l_chi4_series(cplx s) {
  const int K = 4000, levels = 40;
  std::vector<cplx> partial;
  cplx acc = 0;
  for (int k = 0; k < K + levels; ++k) {
    acc += (k % 2 ? -1.0 : 1.0) * std::exp(-s * std::log(2.0 * k + 1));
    if (k >= K - 1) partial.push_back(acc);
  }
  for (int l = 0; l < levels; ++l)
    for (std::size_t i = 0; i + 1 < partial.size() - l; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
  return partial[0];
}

const double kZetaOrdinates[] = {14.13472514173469379,  21.022039638771554993, 25.010857580145688763,
                                 30.42487612585951321,  32.935061587739189691, 37.586178158825671257,
                                 40.918719012147495187, 43.327073280914999519, 48.005150881167159728,
                                 49.773832477672302182};

}  // namespace

TEST_CASE("hurwitz zeta reference values") {
  CHECK(close(hurwitz_zeta({2, 0}, 1), pi * pi / 6, 1e-14));
  CHECK(close(hurwitz_zeta({3, 0}, 1), 1.2020569031595942854, 1e-14));
  CHECK(close(hurwitz_zeta({3, 0}, 0.5), 7.0 * hurwitz_zeta({3, 0}, 1), 1e-10));
  for (double a : {0.1, 0.3, 0.5, 1.0}) CHECK(close(hurwitz_zeta({0, 0}, a), 0.5 - a, 1e-13));
  struct Ref {
    cplx s;
    double a;
    cplx v;
  };
  const Ref refs[] = {
      {{0.5, 14}, 0.3, {-1.3845570845728242677, -0.49103709954933178691}},
      {{2, 100}, 0.7, {-1.2241513954801603264, -1.7070793806148087083}},
      {{0.7, -250}, 1.0, {0.52898265304251551489, -0.49805143898880359808}},
      {{-0.5, 3}, 0.25, {-0.069164580734187303624, -0.74518507092937093469}},
      {{0.5, 900}, 0.6, {-0.79086876262204866105, 0.089520513015229561119}},
  };
  for (const auto& r : refs) {
    bool degraded = false;
    CHECK(std::abs(hurwitz_zeta(r.s, r.a, &degraded) - r.v) <= 1e-10 * std::abs(r.v));
    CHECK_FALSE(degraded);
  }
}

TEST_CASE("hurwitz zeta multiplication identity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(0.3, 3), im(-100, 100), aa(0.05, 1);
  for (int i = 0; i < 60; ++i) {
    const cplx s(re(rng), im(rng));
    const double a = aa(rng);
    for (int m : {2, 3}) {
      cplx lhs = 0;
      for (int j = 0; j < m; ++j) {
        const double x = (a + j) / m;
        lhs += hurwitz_zeta(s, x);
      }
      const cplx rhs = std::pow(cplx(m, 0), s) * hurwitz_zeta(s, a);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("hurwitz zeta errors and regimes") {
  CHECK_THROWS_AS(hurwitz_zeta({1, 0}, 0.5), InvalidInput);
  CHECK_THROWS_AS(hurwitz_zeta({0.5, 2e4}, 0.5), InvalidInput);
  CHECK_THROWS_AS(hurwitz_zeta({0.5, 1}, 0.0), InvalidInput);
  bool degraded = false;
  hurwitz_zeta({0.5, 2000}, 0.5, &degraded);
  CHECK(degraded);
  // regular part is finite and continuous through s = 1
  const cplx r1 = hurwitz_zeta_regular({1, 0}, 1);
  CHECK(std::abs(r1 - 0.57721566490153286061) < 1e-12);
  const cplx near = hurwitz_zeta({1.0 + 1e-4, 0}, 1) - 1.0 / 1e-4;
  CHECK(std::abs(near - r1) < 1e-4);
}

TEST_CASE("gamma function") {
  CHECK(close(complex_gamma({5, 0}), 24.0, 1e-14));
  CHECK(close(complex_gamma({0.5, 0}), std::sqrt(pi), 1e-14));
  const std::pair<cplx, cplx> refs[] = {
      {{-0.3, 2}, {-0.026018281593738417964, -0.05562926693933295543}},
      {{0.5, 3}, {0.02144567055243064606, 0.0068653648372616779142}},
      {{4.5, -7}, {0.090346308053168856171, 0.083314240844865063015}},
      {{-2.5, 0.1}, {-0.89650770119975877642, -0.099318350500568559142}},
  };
  for (const auto& [z, v] : refs) CHECK(std::abs(complex_gamma(z) - v) <= 1e-12 * std::abs(v));
  // log_gamma(z + 1) - log_gamma(z) = log z, modulo 2 pi i
  for (cplx z : {cplx(0.7, 3), cplx(-1.3, 0.4), cplx(12, -40)}) {
    const cplx d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    CHECK(std::abs(d.real()) < 1e-12);
    CHECK(std::abs(std::remainder(d.imag(), 2 * pi)) < 1e-10);
  }
  CHECK_THROWS_AS(log_gamma({-2, 0}), InvalidInput);
}

TEST_CASE("L-function values") {
  auto g1 = build_group(1);
  CHECK(close(l_value({2, 0}, g1.characters[0]), pi * pi / 6, 1e-14));
  CHECK_THROWS_AS(l_value({1, 0}, g1.characters[0]), InvalidInput);
  auto g4 = build_group(4);
  const auto& chi4 = g4.characters[1];
  CHECK(close(l_value({1, 0}, chi4), pi / 4, 1e-13));
  CHECK(close(l_value({2, 0}, chi4), 0.91596559417721901505, 1e-13));

  auto g5 = build_group(5);
  const auto& c5 = g5.characters[1];
  REQUIRE(std::abs(c5(2) - cplx(0, 1)) < 1e-15);
  CHECK(close(l_value({0.5, 10}, c5), {2.1249968234507963198, 2.1638591853704205297}, 1e-11));
  CHECK(close(l_value({1, 0}, c5), {0.86480626597720996723, 0.20415306613838514619}, 1e-11));

  auto g6 = build_group(6);
  CHECK(close(l_value({2, 3}, g6.characters[0]), {1.0218231257291379907, 0.036074098180697807004}, 1e-11));
  auto g12 = build_group(12);
  const auto& c12 = find_char(g12, {0, 1, 0, 0, 0, 1, 0, -1, 0, 0, 0, -1});
  CHECK(close(l_value({0.6, 5}, c12), {1.3150333862279419217, -0.64696350654063282654}, 1e-11));

  // direct alternating series for the character mod 4
  for (cplx s : {cplx(0.6, 0), cplx(0.6, 2), cplx(0.8, -5), cplx(1.5, 10), cplx(3, 1)})
    CHECK(std::abs(l_value(s, chi4) - l_chi4_series(s)) < 1e-8);

  // L(s, chi) conjugates under s -> conj s with chi -> conj chi
  const auto cc = conjugate(c5);
  const cplx s(0.7, 3.3);
  CHECK(std::abs(l_value(std::conj(s), cc) - std::conj(l_value(s, c5))) < 1e-12);

  // Euler factors: imprimitive mod 15 induced from mod 5
  auto g15 = build_group(15);
  for (const auto& chi : g15.characters) {
    auto p = primitive_character(chi);
    if (p.conductor != 5) continue;
    const cplx z(1.3, 7);
    const cplx expect = l_value(z, p.primitive) * (1.0 - p.primitive(3) * std::pow(cplx(3, 0), -z));
    CHECK(std::abs(l_value(z, chi) - expect) < 1e-12);
  }
}

TEST_CASE("mollifier coefficients") {
  MollifierSpec m(10, 50);
  CHECK(m.coefficients[1] == 1.0);
  for (u64 n = 2; n <= 10; ++n) CHECK(m.coefficients[n] == 0.0);
  CHECK(m.cutoff() == u64(std::floor(50 * std::pow(std::log(50.0), 2))));
  for (u64 n = 1; n <= m.cutoff(); ++n) {
    u64 d = 0;
    for (u64 k = 1; k <= n; ++k) d += n % k == 0;
    CHECK(std::fabs(m.coefficients[n]) <= double(d));
  }
  // the truncated tail is negligible at Y = 100
  const double Y = 100;
  MollifierSpec m100(10, Y);
  const auto c = mollifier_coefficients(10, 40 * u64(Y));
  double tail = 0;
  for (u64 n = m100.cutoff() + 1; n < c.size(); ++n) tail += std::fabs(c[n]) / std::sqrt(double(n)) * std::exp(-double(n) / Y);
  CHECK(tail < 1e-6);
  CHECK_THROWS_AS(MollifierSpec(10, 1.5), InvalidInput);
}

TEST_CASE("zeros of zeta") {
  auto g1 = build_group(1);
  const auto& z = g1.characters[0];
  auto c = count_zeros(0.5, 50, z);
  CHECK(c.count == 20);
  REQUIRE(c.zeros.size() == 20);
  for (int i = 0; i < 10; ++i) {
    const auto& up = c.zeros[10 + i];
    const auto& down = c.zeros[9 - i];
    CHECK(up.t == doctest::Approx(kZetaOrdinates[i]).epsilon(1e-9));
    CHECK(down.t == doctest::Approx(-kZetaOrdinates[i]).epsilon(1e-9));
    CHECK(std::fabs(up.beta - 0.5) < 1e-6);
    CHECK(std::abs(l_value({up.beta, up.t}, z)) < 1e-6);
    CHECK(up.multiplicity == 1);
  }
  CHECK(count_zeros(0.9, 50, z).count == 0);
  CHECK(count_zeros(0.5, 30, z, {.locate = false}).count == 6);
  CHECK(count_zeros(0.5, 100, z, {.locate = false}).count == 58);
  CHECK_THROWS_AS(count_zeros(0.4, 50, z), InvalidInput);
  CHECK_THROWS_AS(count_zeros(0.5, 5000, z), BudgetExceeded);
}

TEST_CASE("zeros of other characters") {
  for (u64 q : {3, 4, 5, 7, 8}) {
    auto g = build_group(q);
    for (const auto& chi : g.characters) {
      auto a = count_zeros(0.5, 40, chi);
      ZeroCountOptions wide;
      wide.right_edge = 1.8;
      wide.locate = false;
      CHECK(count_zeros(0.5, 40, chi, wide).count == a.count);
      CHECK(a.zeros.size() == std::size_t(a.count));
      for (const auto& zz : a.zeros) {
        CHECK(std::abs(l_value({zz.beta, zz.t}, chi)) < 1e-6);
        CHECK(std::fabs(zz.t) <= a.T);
        CHECK(zz.beta >= 0.5 - 1e-6);
      }
      if (chi.is_real()) {
        CHECK(a.count % 2 == 0);
        for (std::size_t i = 0; i < a.zeros.size(); ++i) {
          const auto& m = a.zeros[a.zeros.size() - 1 - i];
          CHECK(a.zeros[i].t == doctest::Approx(-m.t).epsilon(1e-8));
          CHECK(a.zeros[i].beta == doctest::Approx(m.beta).epsilon(1e-8));
        }
      } else {
        const auto b = count_zeros(0.5, 40, conjugate(chi));
        CHECK(b.count == a.count);
        REQUIRE(b.zeros.size() == a.zeros.size());
        for (std::size_t i = 0; i < a.zeros.size(); ++i)
          CHECK(b.zeros[i].t == doctest::Approx(-a.zeros[a.zeros.size() - 1 - i].t).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("density scan") {
  auto rep = density_scan(5, 100, {0.5, 0.6, 0.75, 0.95});
  REQUIRE(rep.totals.size() == 4);
  CHECK(rep.monotone);
  for (std::size_t i = 0; i < 4; ++i) {
    long s = 0;
    for (long c : rep.counts[i]) s += c;
    CHECK(s == rep.totals[i]);
    if (i > 0) CHECK(rep.totals[i] <= rep.totals[i - 1]);
  }
  CHECK(rep.totals[0] > 0);
  CHECK(rep.totals[1] == 0);
  CHECK(rep.totals[3] == 0);
  CHECK(rep.prediction_density[1] == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(rep.prediction_corollary[1] == doctest::Approx(std::pow(500.0, 7 * 0.4 / 3)).epsilon(1e-12));
  CHECK(rep.ratios[1] == 0.0);
  CHECK_FALSE(rep.exponents[1].has_value());
  REQUIRE(rep.exponents[0].has_value());
  CHECK(*rep.exponents[0] == doctest::Approx(std::log(double(rep.totals[0])) / std::log(500.0)));
  for (const auto& zl : rep.zero_list)
    for (const auto& z : zl) CHECK(z.beta >= 0.5 - 1e-6);
  CHECK_THROWS_AS(density_scan(30, 100, {0.6}), BudgetExceeded);
  CHECK_THROWS_AS(density_scan(5, 100, {1.0}), InvalidInput);
}

TEST_CASE("classification of zeta zeros") {
  auto g1 = build_group(1);
  const auto& z = g1.characters[0];
  MollifierSpec m(10, 50);
  for (double t : kZetaOrdinates) {
    auto c = classify_zero({0.5, t}, z, m, 50);
    CHECK((c.class_one || c.class_two));
    CHECK(c.identity_residual < 1e-6);
    CHECK(c.principal_term > 0);
    CHECK(c.outside_dichotomy == (t < std::log(50.0)));
  }
  auto g5 = build_group(5);
  auto zs = count_zeros(0.5, 30, g5.characters[1]);
  for (const auto& zz : zs.zeros) {
    auto c = classify_zero({zz.beta, zz.t}, g5.characters[1], m, 30);
    CHECK(c.principal_term == 0.0);
    CHECK(c.identity_residual < 1e-6);
  }
  CHECK_THROWS_AS(classify_zero({0.5, 14}, z, MollifierSpec(1, 50), 50), InvalidInput);
}
