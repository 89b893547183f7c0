#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "lvlab/characters.hpp"

namespace lvlab {

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 30;

enum class CoeffSource { explicit_list, random_unimodular, mollifier, constant_one };

// A Dirichlet polynomial sum_n b_n chi(n) n^{it}.
// Raw form runs over N < n <= 2N; the smoothed form weights n by w(n/N).
struct PolySpec {
  u64 N = 1;
  CoeffSource source = CoeffSource::constant_one;
  // explicit_list: coefficients[n] is b_n; indices past the end read as 0
  std::vector<std::complex<double>> coefficients;
  u64 seed = 0;
  // mollifier: b_n = sum over d | n, d <= X of mu(d)
  u64 mollifier_X = 10;
  bool smoothed = false;

  void validate() const;
  // Inclusive range of n with a possibly nonzero term.
  std::pair<u64, u64> window() const;
};

// c_0 .. c_upto of the truncated Mobius mollifier (c_0 = 0).
std::vector<double> mollifier_coefficients(u64 X, u64 upto);

// Coefficients precomputed once; evaluation is pure and thread safe.
class DirichletPoly {
 public:
  explicit DirichletPoly(const PolySpec& spec);

  const PolySpec& spec() const { return spec_; }
  std::size_t size() const { return n_.size(); }
  const std::vector<u64>& n() const { return n_; }
  // b_n times w(n/N) when smoothed
  const std::vector<std::complex<double>>& weights() const { return weight_; }
  const std::vector<double>& log_n() const { return log_n_; }
  // sum |b_n w(n/N)|, the trivial bound
  double l1_norm() const { return l1_; }

  std::complex<double> operator()(const DirichletCharacter& chi, double t) const;
  // Same sum with a precomputed chi(0..q-1) table.
  std::complex<double> eval_with_table(const std::vector<std::complex<double>>& chi_table, double t) const;

 private:
  PolySpec spec_;
  std::vector<u64> n_;
  std::vector<std::complex<double>> weight_;
  std::vector<double> log_n_;
  double l1_ = 0.0;
};

std::complex<double> eval_poly(const PolySpec& spec, const DirichletCharacter& chi, double t);

// Row-major |characters| x |t_grid| values.
struct GridValues {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::complex<double>> data;
  const std::complex<double>& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

GridValues eval_grid(const PolySpec& spec, const std::vector<DirichletCharacter>& characters,
                     const std::vector<double>& t_grid, std::size_t memory_budget = kDefaultMemoryBudget);
GridValues eval_grid(const DirichletPoly& poly, const std::vector<DirichletCharacter>& characters,
                     const std::vector<double>& t_grid, std::size_t memory_budget = kDefaultMemoryBudget);

// Uniform in [0, 1) from a 64-bit word; portable across standard libraries.
double unit_interval(u64 bits);

}  // namespace lvlab
