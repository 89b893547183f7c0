#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvlab/numtheory.hpp"

namespace lvlab {

inline constexpr u64 kSieveCeiling = 1'000'000'000;
inline constexpr u64 kSieveBlock = u64{1} << 20;

// Smallest prime congruent to k mod D, by a segmented sieve along the progression.
u64 least_prime_ap(u64 D, i64 k, u64 ceiling = kSieveCeiling);

struct GoldbachHit {
  u64 n;
  u64 p1;  // p1 <= p2, p1 + p2 = n
  u64 p2;
};

// Smallest n = k mod p with n a sum of two primes.
GoldbachHit least_goldbach(u64 p, i64 k, u64 ceiling = kSieveCeiling);

struct ApResult {
  u64 D;
  std::vector<u64> residues;
  std::vector<u64> primes;
  u64 max;
  double exponent;
};

struct GoldbachResult {
  u64 p;
  std::vector<u64> residues;
  std::vector<GoldbachHit> hits;
  u64 max;
  double exponent;
};

ApResult ap_table(u64 D, u64 ceiling = kSieveCeiling);
GoldbachResult goldbach_table(u64 p, u64 ceiling = kSieveCeiling);

enum class AppKind { ap, goldbach };

struct ExponentRow {
  u64 modulus;
  u64 max;
  double exponent;
  double bound;          // 7/3 or 7/6
  bool exceeds_slack;    // exponent > bound + 0.2
  bool below_regime;     // modulus < 100
};

struct ExponentTable {
  AppKind kind;
  std::vector<ExponentRow> rows;
  std::vector<ApResult> ap;              // filled for AppKind::ap
  std::vector<GoldbachResult> goldbach;  // filled for AppKind::goldbach
};

inline constexpr double kExponentSlack = 0.2;
inline constexpr u64 kAsymptoticModulus = 100;

ExponentTable exponent_table(AppKind kind, const std::vector<u64>& moduli, u64 ceiling = kSieveCeiling);

std::string to_string(AppKind kind);
AppKind parse_app_kind(const std::string& s);

}  // namespace lvlab
