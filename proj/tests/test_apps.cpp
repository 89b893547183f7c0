#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "lvlab/apps.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/numtheory.hpp"

using namespace lvlab;

namespace {

bool prime_naive(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 least_prime_naive(u64 D, u64 k) {
  for (u64 n = k % D;; n += D)
    if (prime_naive(n)) return n;
}

u64 least_goldbach_naive(u64 p, u64 k) {
  for (u64 n = 4;; ++n) {
    if (n % p != k % p) continue;
    for (u64 a = 2; a <= n / 2; ++a)
      if (prime_naive(a) && prime_naive(n - a)) return n;
  }
}

}  // namespace

TEST_CASE("least primes in progressions: examples") {
  CHECK(least_prime_ap(4, 3) == 3);
  CHECK(least_prime_ap(9, 1) == 19);
  CHECK_THROWS_AS(least_prime_ap(6, 3), InvalidInput);
  CHECK(least_prime_ap(9, -8) == 19);
  CHECK(least_prime_ap(1, 0) == 2);
  CHECK_THROWS_AS(least_prime_ap(1000, 1, 500), BudgetExceeded);
}

TEST_CASE("least primes in progressions against trial division") {
  for (u64 D = 2; D <= 150; ++D)
    for (u64 k = 1; k < D; ++k) {
      if (std::gcd(k, D) != 1) continue;
      const u64 p = least_prime_ap(D, i64(k));
      CHECK(p == least_prime_naive(D, k));
    }
  // large modulus exercises several sieve blocks
  const u64 D = 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3;  // 3^11
  for (i64 k : {1, 2, 4, 100}) {
    const u64 p = least_prime_ap(D, k);
    CHECK(is_prime(p));
    CHECK(p % D == u64(k));
    for (u64 n = u64(k); n < p; n += D) CHECK_FALSE(is_prime(n));
  }
}

TEST_CASE("least Goldbach numbers") {
  CHECK(least_goldbach(3, 1).n == 4);
  CHECK(least_goldbach(3, 2).n == 5);
  for (u64 p : {3, 5, 7, 11, 13, 31, 97})
    for (u64 k = 1; k < p; ++k) {
      const auto h = least_goldbach(p, i64(k));
      CHECK(h.n >= 4);
      CHECK(h.n % p == k);
      CHECK(h.p1 <= h.p2);
      CHECK(h.p1 + h.p2 == h.n);
      CHECK(prime_naive(h.p1));
      CHECK(prime_naive(h.p2));
      CHECK(h.n == least_goldbach_naive(p, k));
    }
  CHECK_THROWS_AS(least_goldbach(9, 1), InvalidInput);
  CHECK_THROWS_AS(least_goldbach(2, 1), InvalidInput);
  CHECK_THROWS_AS(least_goldbach(7, 14), InvalidInput);
}

TEST_CASE("tables") {
  const auto a = ap_table(27);
  CHECK(a.residues.size() == 18);
  u64 mx = 0;
  for (std::size_t i = 0; i < a.residues.size(); ++i) {
    CHECK(std::gcd(a.residues[i], u64(27)) == 1);
    CHECK(a.primes[i] % 27 == a.residues[i]);
    CHECK(a.primes[i] == least_prime_naive(27, a.residues[i]));
    mx = std::max(mx, a.primes[i]);
  }
  CHECK(a.max == mx);
  CHECK(a.exponent == doctest::Approx(std::log(double(mx)) / std::log(27.0)));
  const auto g = goldbach_table(11);
  CHECK(g.residues.size() == 10);
  CHECK(g.exponent == doctest::Approx(std::log(double(g.max)) / std::log(11.0)));
}

TEST_CASE("exponent tables") {
  const auto t = exponent_table(AppKind::ap, {3, 9, 27, 81, 243});
  REQUIRE(t.rows.size() == 5);
  for (const auto& r : t.rows) {
    CHECK(r.exponent < 7.0 / 3);
    CHECK_FALSE(r.exceeds_slack);
    CHECK(r.bound == doctest::Approx(7.0 / 3));
    CHECK(r.below_regime == (r.modulus < 100));
  }
  const auto g = exponent_table(AppKind::goldbach, {3});
  REQUIRE(g.rows.size() == 1);
  CHECK(g.rows[0].max == 5);
  CHECK(g.rows[0].exponent == doctest::Approx(std::log(5.0) / std::log(3.0)));
  CHECK(g.rows[0].below_regime);
  CHECK(exponent_table(AppKind::ap, {}).rows.empty());
  CHECK(parse_app_kind(to_string(AppKind::goldbach)) == AppKind::goldbach);
  CHECK_THROWS_AS(parse_app_kind("linnik"), InvalidInput);
}

TEST_CASE("enlarging the residue set never lowers the maximum") {
  // restricting to a prefix of residues can only lower the running max
  const auto a = ap_table(81);
  u64 run = 0;
  for (std::size_t i = 0; i < a.primes.size(); ++i) {
    const u64 next = std::max(run, a.primes[i]);
    CHECK(next >= run);
    run = next;
  }
  CHECK(run == a.max);
}
