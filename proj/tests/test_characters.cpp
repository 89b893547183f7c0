#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "lvlab/characters.hpp"
#include "lvlab/errors.hpp"
#include "oracles.hpp"

using namespace lvlab;
using cd = std::complex<double>;

namespace {

// Smallest d | q such that chi is constant on coprime classes mod d.
u64 conductor_naive(const DirichletCharacter& chi) {
  const u64 q = chi.q();
  const auto tab = chi.value_table();
  for (u64 d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool ok = true;
    for (u64 a = 1; a < q && ok; ++a) {
      if (std::gcd(a, q) != 1) continue;
      if (a % d != 1 % d) continue;
      ok = std::abs(tab[a] - 1.0) < 1e-9;
    }
    if (ok) return d;
  }
  return q;
}

}  // namespace

TEST_CASE("group structure for small moduli") {
  auto g5 = build_group(5);
  CHECK(g5.characters.size() == 4);
  auto g1 = build_group(1);
  REQUIRE(g1.characters.size() == 1);
  for (i64 n = 1; n < 20; ++n) CHECK(g1.characters[0](n) == cd(1, 0));
  auto g12 = build_group(12);
  CHECK(g12.characters.size() == 4);
  const auto& f = g12.modulus->factorization();
  REQUIRE(f.size() == 2);
  CHECK(f[0].p == 2);
  CHECK(f[0].e == 2);
  CHECK(f[1].p == 3);
  CHECK(f[1].e == 1);
  CHECK_THROWS_AS(build_group(0), InvalidInput);
}

TEST_CASE("factorization, generator orders and discrete logs are consistent") {
  for (u64 q = 1; q <= 400; ++q) {
    Modulus m(q);
    u64 prod = 1;
    for (const auto& pp : m.factorization()) prod *= ipow(pp.p, pp.e);
    CHECK(prod == q);
    u64 ord = 1;
    for (u64 o : m.orders()) ord *= o;
    CHECK(ord == euler_phi(q));
    // exponent vectors are a bijection from units onto the product of cyclic groups
    std::vector<int> seen(m.phi(), 0);
    for (u64 r = 0; r < q; ++r) {
      if (std::gcd(r, q) != 1 && q > 1) continue;
      auto e = m.dlog(static_cast<i64>(r));
      u64 v = 1 % q;
      for (std::size_t j = 0; j < e.size(); ++j) v = v * powmod(m.generators()[j], e[j], q) % q;
      CHECK(v == r % q);
      seen[m.index_of(e)]++;
      if (q == 1) break;
    }
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("generator choice") {
  CHECK(Modulus(5).local_generators() == std::vector<u64>{2});
  CHECK(Modulus(9).local_generators() == std::vector<u64>{2});
  CHECK(Modulus(7).local_generators() == std::vector<u64>{3});
  CHECK(Modulus(16).local_generators() == std::vector<u64>{15, 5});
}

TEST_CASE("character evaluation examples") {
  auto g4 = build_group(4);
  for (const auto& chi : g4.characters)
    if (!chi.is_principal()) CHECK(std::abs(chi(3) - cd(-1, 0)) < 1e-15);
  for (const auto& chi : build_group(6).characters) CHECK(chi(4) == cd(0, 0));
  auto g5 = build_group(5);
  const auto& chi = g5.characters[1];
  REQUIRE(std::abs(chi(2) - cd(0, 1)) < 1e-15);
  CHECK(std::abs(chi(3) - cd(0, -1)) < 1e-15);
  // negative arguments reduce mod q
  CHECK(std::abs(chi(-2) - chi(3)) < 1e-15);
}

TEST_CASE("multiplicativity, parity and inverses") {
  for (u64 q : {1, 2, 8, 9, 12, 15, 16, 24, 35, 64, 77, 120}) {
    auto g = build_group(q);
    for (const auto& chi : g.characters) {
      CHECK(std::abs(chi(1) - 1.0) < 1e-15);
      CHECK(std::abs(chi(-1) - double(chi.parity())) < 1e-15);
      for (i64 m = 0; m < static_cast<i64>(q); ++m) {
        const bool unit = std::gcd<u64>(m, q) == 1;
        CHECK((chi(m) == cd(0, 0)) == !unit);
        if (!unit) continue;
        CHECK(std::abs(chi(m) * chi(mod_inverse(m, q)) - 1.0) < 1e-12);
        for (i64 n = 1; n < static_cast<i64>(q); n += 3)
          if (std::gcd<u64>(n, q) == 1) CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
      }
      CHECK(chi.is_primitive() == (chi.conductor() == q));
    }
  }
}

TEST_CASE("orthogonality up to q = 200") {
  double worst = 0, worst_dual = 0;
  for (u64 q = 1; q <= 200; ++q) {
    auto g = build_group(q);
    const double phi = double(euler_phi(q));
    std::vector<std::vector<cd>> tab;
    for (const auto& chi : g.characters) tab.push_back(chi.value_table());
    for (std::size_t i = 0; i < tab.size(); ++i)
      for (std::size_t j = 0; j < tab.size(); ++j) {
        cd s = 0;
        for (u64 a = 0; a < q; ++a) s += tab[i][a] * std::conj(tab[j][a]);
        if (q == 1) s = tab[i][0] * std::conj(tab[j][0]);
        worst = std::max(worst, std::abs(s - (i == j ? phi : 0.0)));
      }
    if (q > 1 && q <= 60) {
      for (u64 a = 1; a < q; ++a)
        for (u64 b = 1; b < q; ++b) {
          if (std::gcd(a, q) != 1 || std::gcd(b, q) != 1) continue;
          cd s = 0;
          for (const auto& t : tab) s += t[a] * std::conj(t[b]);
          worst_dual = std::max(worst_dual, std::abs(s - (a == b ? phi : 0.0)));
        }
    }
  }
  CHECK(worst < 1e-9);
  CHECK(worst_dual < 1e-9);
}

TEST_CASE("ramanujan sums") {
  CHECK(ramanujan_sum(5, 1) == -1);
  CHECK(ramanujan_sum(6, 2) == -1);
  CHECK(ramanujan_sum(4, 0) == 2);
  for (u64 q = 1; q <= 500; ++q)
    for (i64 m = -500; m <= 500; ++m) {
      const i64 naive = std::llround(oracle::ramanujan(q, m));
      if (ramanujan_sum(q, m) != naive) {
        FAIL("C_" << q << "(" << m << ") = " << ramanujan_sum(q, m) << ", brute force " << naive);
      }
    }
}

TEST_CASE("gauss sums") {
  auto g4 = build_group(4);
  for (const auto& chi : g4.characters)
    if (!chi.is_principal()) CHECK(std::abs(gauss_sum(chi) - cd(0, 2)) < 1e-12);
  CHECK(std::abs(gauss_sum(build_group(1).characters[0]) - 1.0) < 1e-15);
  auto g5 = build_group(5);
  const auto& quad = g5.characters[2];
  REQUIRE(quad.is_real());
  CHECK(std::abs(gauss_sum(quad) - std::sqrt(5.0)) < 1e-12);

  for (u64 q = 1; q <= 200; ++q)
    for (const auto& chi : build_group(q).characters) {
      const cd tau = gauss_sum(chi);
      CHECK(std::abs(tau - oracle::gauss(chi)) < 1e-9);
      if (chi.is_primitive()) CHECK(std::abs(std::abs(tau) - std::sqrt(double(q))) < 1e-9);
    }
}

TEST_CASE("conductors and inducing characters") {
  auto g12 = build_group(12);
  auto ind = primitive_character(g12.characters[0]);
  CHECK(ind.conductor == 1);
  auto g5 = build_group(5);
  for (const auto& chi : g5.characters) {
    if (chi.is_principal()) continue;
    auto p = primitive_character(chi);
    CHECK(p.conductor == 5);
    for (i64 n = 0; n < 10; ++n) CHECK(std::abs(p.primitive(n) - chi(n)) < 1e-15);
  }
  // the character mod 8 induced from the nontrivial one mod 4
  auto g8 = build_group(8);
  int found = 0;
  for (const auto& chi : g8.characters) {
    if (std::abs(chi(3) + 1.0) < 1e-12 && std::abs(chi(5) - 1.0) < 1e-12) {
      ++found;
      CHECK(chi.conductor() == 4);
      CHECK(primitive_character(chi).conductor == 4);
    }
  }
  CHECK(found == 1);

  for (u64 q = 1; q <= 150; ++q)
    for (const auto& chi : build_group(q).characters) {
      CHECK(chi.conductor() == conductor_naive(chi));
      auto p = primitive_character(chi);
      CHECK(p.primitive.q() == p.conductor);
      CHECK(p.primitive.is_primitive());
      for (i64 n = 1; n < static_cast<i64>(q); ++n)
        if (std::gcd<u64>(n, q) == 1) CHECK(std::abs(p.primitive(n) - chi(n)) < 1e-12);
    }
}

TEST_CASE("group product and conjugate") {
  auto g = build_group(21);
  for (const auto& a : g.characters)
    for (const auto& b : g.characters) {
      auto ab = multiply(a, b);
      for (i64 n = 0; n < 21; ++n) CHECK(std::abs(ab(n) - a(n) * b(n)) < 1e-12);
    }
  for (const auto& a : g.characters) {
    auto c = conjugate(a);
    for (i64 n = 0; n < 21; ++n) CHECK(std::abs(c(n) - std::conj(a(n))) < 1e-12);
  }
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(build_group(20011), BudgetExceeded);
  CHECK_NOTHROW(Modulus(999983));
  CHECK_THROWS_AS(Modulus(1000003), BudgetExceeded);
}
