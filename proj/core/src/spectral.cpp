#include "lvlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lvlab/bump.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/kernel.hpp"
#include "lvlab/parallel.hpp"

namespace lvlab {

namespace {

using cd = std::complex<double>;

SquareMatrix multiply(const SquareMatrix& A, const SquareMatrix& B) {
  SquareMatrix C;
  C.n = A.n;
  C.a.assign(A.n * A.n, {});
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t k = 0; k < A.n; ++k) {
      const cd aik = A(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < A.n; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

// tr(A B)
cd trace_product(const SquareMatrix& A, const SquareMatrix& B) {
  cd s;
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t j = 0; j < A.n; ++j) s += A(i, j) * B(j, i);
  return s;
}

double frobenius(const SquareMatrix& A) {
  double s = 0.0;
  for (const auto& x : A.a) s += std::norm(x);
  return std::sqrt(s);
}

void check_lattice_budget(const PointSet& W, const SpectralBudget& budget) {
  if (W.q() > budget.max_q_lattice)
    throw BudgetExceeded("lattice sums: q = " + std::to_string(W.q()) + " exceeds cap " +
                         std::to_string(budget.max_q_lattice));
  if (W.size() > budget.max_points_lattice)
    throw BudgetExceeded("lattice sums: |W| = " + std::to_string(W.size()) + " exceeds cap " +
                         std::to_string(budget.max_points_lattice));
}

// A_ij(m) for one m.
SquareMatrix pair_factor(const PointSet& W, u64 N, int m, const std::vector<std::vector<cd>>& tables,
                         const std::vector<u64>& units) {
  const std::size_t n = W.size();
  const u64 q = W.q();
  const double Nq = static_cast<double>(N) / static_cast<double>(q);
  std::vector<cd> phase(q);
  for (u64 r = 0; r < q; ++r)
    phase[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
  const Kernel& k = default_kernel();
  SquareMatrix A;
  A.n = n;
  A.a.assign(n * n, {});
  parallel_for(n * n, [&](std::size_t idx) {
    std::size_t i = idx / n, j = idx % n;
    const auto& ti = tables[W.entries[i].chi];
    const auto& tj = tables[W.entries[j].chi];
    cd c;
    for (u64 a : units) {
      u64 r = static_cast<u64>(mod_floor(static_cast<i64>(a) * m, static_cast<i64>(q)));
      c += ti[a % q] * std::conj(tj[a % q]) * phase[r];
    }
    if (std::abs(c) < 1e-12) return;  // exact zero up to rounding of roots of unity
    cd h = k.h_hat(W.entries[i].t - W.entries[j].t, Nq * m).value;
    A.a[idx] = Nq * c * h;
  });
  return A;
}

std::vector<std::vector<cd>> char_tables(const PointSet& W) {
  std::vector<std::vector<cd>> tables(W.characters.size());
  for (const auto& e : W.entries)
    if (tables[e.chi].empty()) tables[e.chi] = W.characters[e.chi].value_table();
  return tables;
}

std::vector<u64> reduced_residues(u64 q) {
  std::vector<u64> u;
  for (u64 a = 1; a <= q; ++a)
    if (gcd_u(a, q) == 1) u.push_back(a);
  return u;
}

}  // namespace

SingularValue largest_singular_value(const SquareMatrix& G, int max_iter, double tol) {
  SingularValue out;
  const std::size_t n = G.n;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  auto apply = [&](const std::vector<cd>& x) {
    std::vector<cd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      cd s;
      for (std::size_t j = 0; j < n; ++j) s += G(i, j) * x[j];
      y[i] = s;
    }
    return y;
  };
  auto normalise = [](std::vector<cd>& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    s = std::sqrt(s);
    if (s > 0.0)
      for (auto& v : x) v /= s;
    return s;
  };
  std::vector<cd> x(n, 1.0);
  normalise(x);
  double lambda = 0.0;
  bool have = false;
  for (int it = 1; it <= max_iter; ++it) {
    auto y = apply(x);
    cd rq;
    for (std::size_t i = 0; i < n; ++i) rq += std::conj(x[i]) * y[i];
    double next = rq.real();
    out.iterations = it;
    if (normalise(y) == 0.0) {
      // start vector in the kernel: restart from a shifted vector once
      if (out.restarts == 0) {
        ++out.restarts;
        for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * static_cast<double>(i) / static_cast<double>(n);
        normalise(x);
        have = false;
        continue;
      }
      lambda = 0.0;
      out.converged = true;
      break;
    }
    x = std::move(y);
    if (have && std::fabs(next - lambda) <= tol * std::fabs(next)) {
      lambda = next;
      out.converged = true;
      break;
    }
    lambda = next;
    have = true;
  }
  out.lambda = std::max(0.0, lambda);
  out.s1 = std::sqrt(out.lambda);
  return out;
}

GramData build_gram(const PointSet& W, u64 N, const SpectralBudget& budget) {
  if (N < 1) throw InvalidInput("build_gram: N must be >= 1");
  if (W.size() > budget.max_points)
    throw BudgetExceeded("build_gram: |W| = " + std::to_string(W.size()) + " exceeds cap " +
                         std::to_string(budget.max_points));
  if (N > budget.max_N)
    throw BudgetExceeded("build_gram: N = " + std::to_string(N) + " exceeds cap " + std::to_string(budget.max_N));
  const std::size_t n = W.size();
  const u64 q = W.q();
  GramData g;
  g.N = N;
  g.q = q;
  g.size = n;
  g.G.n = n;
  g.G.a.assign(n * n, {});
  auto tables = char_tables(W);
  const Bump& w = default_w();
  // rows of M are generated a block of n-values at a time
  constexpr u64 kBlock = 2048;
  std::vector<cd> rows;
  for (u64 lo = N + 1; lo < 2 * N; lo += kBlock) {
    const u64 hi = std::min<u64>(2 * N, lo + kBlock);
    const std::size_t width = hi - lo;
    rows.assign(n * width, {});
    for (u64 m = lo; m < hi; ++m) {
      double wv = w(static_cast<double>(m) / static_cast<double>(N));
      if (wv == 0.0) continue;
      double ln = std::log(static_cast<double>(m));
      for (std::size_t i = 0; i < n; ++i) {
        cd c = tables[W.entries[i].chi][m % q];
        if (c == 0.0) continue;
        rows[i * width + (m - lo)] = wv * c * std::polar(1.0, W.entries[i].t * ln);
      }
    }
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i; j < n; ++j) {
        cd s;
        for (std::size_t c = 0; c < width; ++c) s += rows[i * width + c] * std::conj(rows[j * width + c]);
        g.G(i, j) += s;
      }
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.G(i, i) = g.G(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) g.G(j, i) = std::conj(g.G(i, j));
  }
  for (std::size_t i = 0; i < n; ++i) g.tr_G += g.G(i, i).real();
  g.tr_G3 = trace_product(multiply(g.G, g.G), g.G).real();
  g.top = largest_singular_value(g.G);
  return g;
}

TraceReport trace_identities(const GramData& gram, double eps) {
  TraceReport r;
  const double q = static_cast<double>(gram.q), N = static_cast<double>(gram.N);
  const double w = static_cast<double>(gram.size);
  const double phi = static_cast<double>(euler_phi(gram.q));
  const double w2 = default_w().l2_norm_sq();
  r.tr_G = gram.tr_G;
  r.est1_main = phi * N * w * w2 / q;
  r.est1_residual = gram.tr_G - r.est1_main;
  r.est1_budget = q * w / std::pow(N, 1.0 - eps);
  r.tr_G3 = gram.tr_G3;
  r.est3_main = std::pow(phi * N / q, 3) * w * std::pow(w2, 3);
  r.s1 = gram.top.s1;
  if (gram.size > 0) {
    r.jensen_gap = gram.tr_G3 - std::pow(gram.tr_G, 3) / (w * w);
    double root6 = std::pow(std::max(0.0, r.jensen_gap), 1.0 / 6.0);
    double root2 = std::sqrt(gram.tr_G / w);
    r.lsvt_plus = 2.0 * root6 + 2.0 * root2;
    r.lsvt_minus = 2.0 * root6 - 2.0 * root2;
  }
  r.lsvt_plus_holds = r.s1 <= r.lsvt_plus * (1.0 + 1e-12);
  r.lsvt_minus_holds = r.s1 <= r.lsvt_minus * (1.0 + 1e-12);
  return r;
}

LatticeFactors::LatticeFactors(const PointSet& W, u64 N, int reach, const SpectralBudget& budget)
    : n_(W.size()), reach_(reach) {
  if (reach < 0) throw InvalidInput("LatticeFactors: reach must be >= 0");
  check_lattice_budget(W, budget);
  auto tables = char_tables(W);
  auto units = reduced_residues(W.q());
  for (int m = -reach; m <= reach; ++m) mats_.push_back(pair_factor(W, N, m, tables, units));
}

std::complex<double> LatticeFactors::I(int m1, int m2, int m3) const {
  return trace_product(multiply(at(m1), at(m2)), at(m3));
}

LatticeTermIm compute_Im(const PointSet& W, u64 N, std::array<int, 3> m, const SpectralBudget& budget) {
  check_lattice_budget(W, budget);
  auto tables = char_tables(W);
  auto units = reduced_residues(W.q());
  std::array<SquareMatrix, 3> A;
  LatticeTermIm out;
  out.m = m;
  for (int k = 0; k < 3; ++k) {
    A[static_cast<std::size_t>(k)] = pair_factor(W, N, m[static_cast<std::size_t>(k)], tables, units);
    out.factor_norms[static_cast<std::size_t>(k)] = frobenius(A[static_cast<std::size_t>(k)]);
  }
  out.value = trace_product(multiply(A[0], A[1]), A[2]);
  return out;
}

int lattice_cutoff(u64 q, double T, u64 N, double eps) {
  const double qT = static_cast<double>(q) * T;
  return static_cast<int>(std::ceil(std::pow(qT, eps) * qT / static_cast<double>(N)));
}

Decomposition decompose_S(const PointSet& W, u64 N, double eps, const SpectralBudget& budget, const GramData* gram,
                          int cutoff_override) {
  check_lattice_budget(W, budget);
  Decomposition d;
  d.cutoff = cutoff_override >= 0 ? cutoff_override : lattice_cutoff(W.q(), W.T, N, eps);
  const double side = 2.0 * d.cutoff + 1.0;
  if (side * side * side > static_cast<double>(budget.max_lattice))
    throw BudgetExceeded("decompose_S: lattice of side " + std::to_string(2 * d.cutoff + 1) + " exceeds budget");
  GramData local;
  if (!gram) {
    local = build_gram(W, N, budget);
    gram = &local;
  }
  d.tr_G3 = gram->tr_G3;
  LatticeFactors F(W, N, d.cutoff, budget);
  const int c = d.cutoff;
  std::array<cd, 4> bucket{};
  for (int m1 = -c; m1 <= c; ++m1)
    for (int m2 = -c; m2 <= c; ++m2) {
      SquareMatrix P = multiply(F.at(m1), F.at(m2));
      for (int m3 = -c; m3 <= c; ++m3) {
        int nz = (m1 != 0) + (m2 != 0) + (m3 != 0);
        bucket[static_cast<std::size_t>(nz)] += trace_product(P, F.at(m3));
        ++d.counts[static_cast<std::size_t>(nz)];
      }
    }
  d.I0 = bucket[0];
  d.S1 = bucket[1];
  d.S2 = bucket[2];
  d.S3 = bucket[3];
  d.residual = d.tr_G3 - (d.I0 + d.S1 + d.S2 + d.S3).real();
  const double q = static_cast<double>(W.q()), Nd = static_cast<double>(N), w = static_cast<double>(W.size());
  const double qT = q * W.T;
  d.ratio_S1 = std::abs(d.S1) / (q * Nd * w);
  d.ratio_S2 = std::abs(d.S2) / (qT * Nd * std::pow(w, 1.75));
  d.ratio_S3 = std::abs(d.S3) / (qT * qT * std::pow(w, 1.5));
  return d;
}

RtlsReport rtls_check(std::size_t W_size, u64 N, double sigma, double s1, double constant) {
  RtlsReport r;
  r.bound = std::pow(static_cast<double>(N), 1.0 - 2.0 * sigma) * s1 * s1;
  r.ratio = r.bound > 0.0 ? static_cast<double>(W_size) / r.bound : (W_size == 0 ? 0.0 : INFINITY);
  r.holds = r.ratio <= constant;
  return r;
}

}  // namespace lvlab
