#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lvlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 p;
  int e;
};

u64 gcd_u(u64 a, u64 b);
i64 mod_floor(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Inverse of a modulo m by extended Euclid; throws InvalidInput when gcd(a,m) != 1.
i64 mod_inverse(i64 a, i64 m);

std::vector<PrimePower> factorize(u64 n);
u64 euler_phi(u64 n);
int mobius(u64 n);
u64 ipow(u64 b, int e);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

// Plain sieve of Eratosthenes, primes <= limit.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Mobius values mu(0..limit); mu(0) is set to 0.
std::vector<int> mobius_table(std::uint32_t limit);

}  // namespace lvlab
