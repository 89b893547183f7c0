#include "lvlab/numtheory.hpp"

#include <array>

#include "lvlab/errors.hpp"

namespace lvlab {

u64 gcd_u(u64 a, u64 b) {
  while (b != 0) {
    u64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 mod_inverse(i64 a, i64 m) {
  if (m <= 0) throw InvalidInput("mod_inverse: modulus must be positive");
  i64 old_r = mod_floor(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 qt = old_r / r;
    i64 tmp = old_r - qt * r;
    old_r = r;
    r = tmp;
    tmp = old_s - qt * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && m != 1)
    throw InvalidInput("mod_inverse: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod_floor(old_s, m);
}

std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  if (n <= 1) return out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

u64 euler_phi(u64 n) {
  if (n == 0) return 0;
  u64 r = n;
  for (const auto& pp : factorize(n)) r = r / pp.p * (pp.p - 1);
  return r;
}

int mobius(u64 n) {
  if (n == 0) return 0;
  int s = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.e > 1) return 0;
    s = -s;
  }
  return s;
}

u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 11> bases{2, 3, 5, 7, 11, 13, 17, 23, 29, 31, 37};
  static constexpr std::array<u64, 13> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  if (n < 43 * 43) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

std::vector<int> mobius_table(std::uint32_t limit) {
  std::vector<int> mu(limit + 1, 1);
  mu[0] = 0;
  std::vector<bool> comp(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (j > i) comp[j] = true;
      mu[j] = -mu[j];
    }
    for (std::uint64_t j = i * i; j <= limit; j += i * i) mu[j] = 0;
  }
  return mu;
}

}  // namespace lvlab
