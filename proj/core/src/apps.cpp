#include "lvlab/apps.hpp"

#include <algorithm>
#include <cmath>

#include "lvlab/errors.hpp"
#include "lvlab/parallel.hpp"

namespace lvlab {

namespace {

const std::vector<std::uint32_t>& base_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(65536);
  return primes;
}

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

u64 least_prime_ap(u64 D, i64 k, u64 ceiling) {
  if (D < 1) throw InvalidInput("least_prime_ap: D must be >= 1");
  if (ceiling > (u64{1} << 32)) throw InvalidInput("least_prime_ap: ceiling above 2^32 is not supported");
  const u64 k0 = static_cast<u64>(mod_floor(k, static_cast<i64>(D)));
  if (gcd_u(k0, D) != 1)
    throw InvalidInput("least_prime_ap: invalid residue, gcd(" + std::to_string(k) + ", " + std::to_string(D) + ") > 1");
  const auto& bp = base_primes();
  // Blocks of progression indices j (n = k0 + j D) grow from 2^12 to the 2^20 cap.
  u64 block = std::min<u64>(4096, kSieveBlock);
  std::vector<char> composite;
  for (u64 j0 = 0;; j0 += block, block = std::min(block * 2, kSieveBlock)) {
    const u64 lo = k0 + j0 * D;
    if (lo > ceiling) break;
    const u64 jn = std::min(block, (ceiling - lo) / D + 1);
    const u64 hi = lo + (jn - 1) * D;
    composite.assign(jn, 0);
    const u64 root = isqrt(hi);
    for (std::uint32_t l : bp) {
      if (l > root) break;
      if (D % l == 0) continue;
      // First j >= j0 with k0 + j D = 0 mod l.
      const u64 inv = static_cast<u64>(mod_inverse(static_cast<i64>(D % l), l));
      const u64 target = mulmod((l - k0 % l) % l, inv, l);
      u64 off = (target + l - j0 % l) % l;
      for (u64 j = off; j < jn; j += l) {
        if (lo + j * D != l) composite[j] = 1;
      }
    }
    for (u64 j = 0; j < jn; ++j) {
      const u64 n = lo + j * D;
      if (n >= 2 && !composite[j]) return n;
    }
  }
  throw BudgetExceeded("least_prime_ap: no prime = " + std::to_string(k0) + " mod " + std::to_string(D) +
                       " below the ceiling " + std::to_string(ceiling));
}

GoldbachHit least_goldbach(u64 p, i64 k, u64 ceiling) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("least_goldbach: modulus must be an odd prime");
  const u64 k0 = static_cast<u64>(mod_floor(k, static_cast<i64>(p)));
  if (k0 == 0) throw InvalidInput("least_goldbach: invalid residue, p divides k");
  for (u64 n = k0; n <= ceiling; n += p) {
    if (n < 4) continue;
    if (n % 2 == 1) {
      if (is_prime(n - 2)) return {n, 2, n - 2};
      continue;
    }
    for (u64 a = 2; a <= n / 2; a = (a == 2 ? 3 : a + 2)) {
      if (is_prime(a) && is_prime(n - a)) return {n, a, n - a};
    }
  }
  throw BudgetExceeded("least_goldbach: nothing below the ceiling " + std::to_string(ceiling));
}

ApResult ap_table(u64 D, u64 ceiling) {
  if (D < 2) throw InvalidInput("ap_table: modulus must be >= 2");
  ApResult r{D, {}, {}, 0, 0.0};
  for (u64 k = 1; k < D; ++k)
    if (gcd_u(k, D) == 1) r.residues.push_back(k);
  r.primes.assign(r.residues.size(), 0);
  parallel_for(r.residues.size(),
               [&](std::size_t i) { r.primes[i] = least_prime_ap(D, static_cast<i64>(r.residues[i]), ceiling); });
  r.max = *std::max_element(r.primes.begin(), r.primes.end());
  r.exponent = std::log(static_cast<double>(r.max)) / std::log(static_cast<double>(D));
  return r;
}

GoldbachResult goldbach_table(u64 p, u64 ceiling) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("goldbach_table: modulus must be an odd prime");
  GoldbachResult r{p, {}, {}, 0, 0.0};
  for (u64 k = 1; k < p; ++k) r.residues.push_back(k);
  r.hits.assign(r.residues.size(), GoldbachHit{0, 0, 0});
  parallel_for(r.residues.size(),
               [&](std::size_t i) { r.hits[i] = least_goldbach(p, static_cast<i64>(r.residues[i]), ceiling); });
  for (const auto& h : r.hits) r.max = std::max(r.max, h.n);
  r.exponent = std::log(static_cast<double>(r.max)) / std::log(static_cast<double>(p));
  return r;
}

ExponentTable exponent_table(AppKind kind, const std::vector<u64>& moduli, u64 ceiling) {
  ExponentTable t{kind, {}, {}, {}};
  const double bound = kind == AppKind::ap ? 7.0 / 3.0 : 7.0 / 6.0;
  for (u64 m : moduli) {
    u64 mx;
    double ex;
    if (kind == AppKind::ap) {
      t.ap.push_back(ap_table(m, ceiling));
      mx = t.ap.back().max;
      ex = t.ap.back().exponent;
    } else {
      t.goldbach.push_back(goldbach_table(m, ceiling));
      mx = t.goldbach.back().max;
      ex = t.goldbach.back().exponent;
    }
    t.rows.push_back({m, mx, ex, bound, ex > bound + kExponentSlack, m < kAsymptoticModulus});
  }
  return t;
}

std::string to_string(AppKind kind) { return kind == AppKind::ap ? "ap" : "goldbach"; }

AppKind parse_app_kind(const std::string& s) {
  if (s == "ap") return AppKind::ap;
  if (s == "goldbach") return AppKind::goldbach;
  throw InvalidInput("unknown apps kind '" + s + "' (expected ap or goldbach)");
}

}  // namespace lvlab
