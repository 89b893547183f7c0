#pragma once

// Deliberately naive reference implementations shared by the unit tests and the
// acceptance run. Nothing here reuses the library's fast paths.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "lvlab/bump.hpp"
#include "lvlab/characters.hpp"
#include "lvlab/kernel.hpp"
#include "lvlab/large_values.hpp"
#include "lvlab/spectral.hpp"

namespace oracle {

using lvlab::i64;
using lvlab::u64;
using cd = std::complex<double>;

inline double ramanujan(u64 q, i64 m) {
  double s = 0;
  for (u64 a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) s += std::cos(2 * std::numbers::pi * double(a) * double(m) / double(q));
  return s;
}

inline cd gauss(const lvlab::DirichletCharacter& chi) {
  cd s = 0;
  for (u64 a = 0; a < chi.q(); ++a)
    s += chi(static_cast<i64>(a)) * std::polar(1.0, 2 * std::numbers::pi * double(a) / double(chi.q()));
  return s;
}

inline cd r_value(const lvlab::PointSet& W, double v, i64 a) {
  cd s = 0;
  for (const auto& e : W.entries) s += std::polar(1.0, e.t * std::log(v)) * W.characters[e.chi](a);
  return s;
}

// Quartic loop; character products compared value by value on the units.
inline u64 energy(const lvlab::PointSet& W) {
  const std::size_t n = W.size();
  const u64 q = W.q();
  std::vector<std::vector<cd>> tab;
  for (const auto& c : W.characters) tab.push_back(c.value_table());
  auto same_product = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    for (u64 r = 1; r < std::max<u64>(q, 2); ++r) {
      if (std::gcd(r, q) != 1) continue;
      const u64 i = r % q;
      const cd x = tab[W.entries[a].chi][i] * tab[W.entries[b].chi][i];
      const cd y = tab[W.entries[c].chi][i] * tab[W.entries[d].chi][i];
      if (std::abs(x - y) > 1e-9) return false;
    }
    return true;
  };
  u64 cnt = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const double s = W.entries[a].t + W.entries[b].t - W.entries[c].t - W.entries[d].t;
          if (std::fabs(s) <= 1.0 && same_product(a, b, c, d)) ++cnt;
        }
  return cnt;
}

// sum over M < n1, n2 <= 2M coprime to q of |R(n1/n2, n1 n2^{-1})|^k
inline double discrete_moment(const lvlab::PointSet& W, u64 M, int k) {
  const u64 q = W.q();
  double total = 0;
  for (u64 n1 = M + 1; n1 <= 2 * M; ++n1)
    for (u64 n2 = M + 1; n2 <= 2 * M; ++n2) {
      if (std::gcd(n1, q) != 1 || std::gcd(n2, q) != 1) continue;
      const i64 a = q == 1 ? 0 : lvlab::mod_floor(i64(n1) * lvlab::mod_inverse(i64(n2 % q), i64(q)), i64(q));
      total += std::pow(std::abs(r_value(W, double(n1) / double(n2), a)), k);
    }
  return total;
}

inline lvlab::SquareMatrix gram(const lvlab::PointSet& W, u64 N) {
  lvlab::SquareMatrix G;
  G.n = W.size();
  G.a.assign(G.n * G.n, 0);
  for (std::size_t i = 0; i < G.n; ++i)
    for (std::size_t j = 0; j < G.n; ++j) {
      cd s = 0;
      for (u64 n = N; n <= 2 * N; ++n) {
        const double w = lvlab::bump_w(double(n) / double(N));
        s += w * w * W.chi_of(i)(i64(n)) * std::conj(W.chi_of(j)(i64(n))) *
             std::polar(1.0, (W.entries[i].t - W.entries[j].t) * std::log(double(n)));
      }
      G(i, j) = s;
    }
  return G;
}

// Lattice term with the full (a1, a2, a3) character sum.
inline cd lattice_term(const lvlab::PointSet& W, u64 N, std::array<int, 3> m) {
  const u64 q = W.q();
  const double Nq = double(N) / double(q);
  std::vector<u64> units;
  for (u64 a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) units.push_back(a);
  const std::size_t n = W.size();
  cd total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto &ci = W.chi_of(i), &cj = W.chi_of(j), &ck = W.chi_of(k);
        const double ti = W.entries[i].t, tj = W.entries[j].t, tk = W.entries[k].t;
        const cd h = lvlab::h_hat(ti - tj, Nq * m[0]).value * lvlab::h_hat(tj - tk, Nq * m[1]).value *
                     lvlab::h_hat(tk - ti, Nq * m[2]).value;
        if (h == 0.0) continue;
        cd s = 0;
        for (u64 a1 : units)
          for (u64 a2 : units)
            for (u64 a3 : units) {
              const cd chis = ci(i64(a1)) * std::conj(cj(i64(a1))) * cj(i64(a2)) * std::conj(ck(i64(a2))) *
                              ck(i64(a3)) * std::conj(ci(i64(a3)));
              const i64 r = lvlab::mod_floor(i64(a1) * m[0] + i64(a2) * m[1] + i64(a3) * m[2], i64(q));
              s += chis * std::polar(1.0, 2 * std::numbers::pi * double(r) / double(q));
            }
        total += s * h;
      }
  return Nq * Nq * Nq * total;
}

// Plain sieve of Eratosthenes.
inline std::vector<char> prime_flags(std::size_t limit) {
  std::vector<char> f(limit + 1, 1);
  f[0] = 0;
  if (limit >= 1) f[1] = 0;
  for (std::size_t p = 2; p * p <= limit; ++p)
    if (f[p])
      for (std::size_t m = p * p; m <= limit; m += p) f[m] = 0;
  return f;
}

}  // namespace oracle
