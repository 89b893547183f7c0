#include "lvlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lvlab/bump.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/parallel.hpp"

namespace lvlab {

double unit_interval(u64 bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

void PolySpec::validate() const {
  if (N < 1) throw InvalidInput("poly: N must be >= 1");
  if (N > (u64{1} << 40)) throw InvalidInput("poly: N too large");
  if (source == CoeffSource::mollifier && mollifier_X < 1) throw InvalidInput("poly: mollifier X must be >= 1");
  if (source == CoeffSource::explicit_list)
    for (const auto& b : coefficients)
      if (!(std::abs(b) <= 1.0 + 1e-12)) throw InvalidInput("poly: explicit coefficients must satisfy |b_n| <= 1");
}

std::pair<u64, u64> PolySpec::window() const {
  // w(n/N) vanishes at n = N and n = 2N, so the smoothed range is open.
  if (smoothed) return {N + 1, 2 * N - 1};
  return {N + 1, 2 * N};
}

std::vector<double> mollifier_coefficients(u64 X, u64 upto) {
  std::vector<double> c(upto + 1, 0.0);
  if (upto == 0) return c;
  u64 top = std::min(X, upto);
  auto mu = mobius_table(static_cast<std::uint32_t>(top));
  for (u64 d = 1; d <= top; ++d) {
    if (mu[d] == 0) continue;
    for (u64 n = d; n <= upto; n += d) c[n] += mu[d];
  }
  return c;
}

DirichletPoly::DirichletPoly(const PolySpec& spec) : spec_(spec) {
  spec_.validate();
  auto [a, b] = spec_.window();
  if (b < a) return;
  std::vector<double> moll;
  if (spec_.source == CoeffSource::mollifier) moll = mollifier_coefficients(spec_.mollifier_X, b);
  std::mt19937_64 rng(spec_.seed);
  const Bump& w = default_w();
  const double twopi = 2.0 * std::numbers::pi;
  for (u64 n = a; n <= b; ++n) {
    std::complex<double> c;
    switch (spec_.source) {
      case CoeffSource::constant_one: c = 1.0; break;
      case CoeffSource::explicit_list: c = n < spec_.coefficients.size() ? spec_.coefficients[n] : 0.0; break;
      case CoeffSource::random_unimodular: c = std::polar(1.0, twopi * unit_interval(rng())); break;
      case CoeffSource::mollifier: c = moll[n]; break;
    }
    if (spec_.smoothed) c *= w(static_cast<double>(n) / static_cast<double>(spec_.N));
    if (c == 0.0) continue;
    n_.push_back(n);
    weight_.push_back(c);
    log_n_.push_back(std::log(static_cast<double>(n)));
    l1_ += std::abs(c);
  }
}

std::complex<double> DirichletPoly::eval_with_table(const std::vector<std::complex<double>>& chi_table,
                                                    double t) const {
  const u64 q = chi_table.size();
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    const auto& x = chi_table[n_[i] % q];
    if (x == 0.0) continue;
    double ph = t * log_n_[i];
    std::complex<double> term = weight_[i] * x * std::complex<double>(std::cos(ph), std::sin(ph));
    re += term.real();
    im += term.imag();
  }
  return {re, im};
}

std::complex<double> DirichletPoly::operator()(const DirichletCharacter& chi, double t) const {
  return eval_with_table(chi.value_table(), t);
}

std::complex<double> eval_poly(const PolySpec& spec, const DirichletCharacter& chi, double t) {
  return DirichletPoly(spec)(chi, t);
}

GridValues eval_grid(const DirichletPoly& poly, const std::vector<DirichletCharacter>& characters,
                     const std::vector<double>& t_grid, std::size_t memory_budget) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw InvalidInput("eval_grid: t grid must be ascending");
  GridValues out;
  out.rows = characters.size();
  out.cols = t_grid.size();
  std::size_t q = characters.empty() ? 0 : characters.front().q();
  std::size_t need = out.rows * out.cols * sizeof(std::complex<double>) +
                     out.rows * q * sizeof(std::complex<double>) +
                     poly.size() * (sizeof(u64) + sizeof(double) + sizeof(std::complex<double>));
  if (need > memory_budget)
    throw BudgetExceeded("eval_grid: needs " + std::to_string(need) + " bytes, budget " +
                             std::to_string(memory_budget),
                         need);
  out.data.assign(out.rows * out.cols, {});
  std::vector<std::vector<std::complex<double>>> tables(out.rows);
  for (std::size_t r = 0; r < out.rows; ++r) tables[r] = characters[r].value_table();
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (out.cols + kChunk - 1) / kChunk;
  parallel_for(out.rows * chunks, [&](std::size_t job) {
    std::size_t r = job / chunks, c0 = (job % chunks) * kChunk;
    std::size_t c1 = std::min(out.cols, c0 + kChunk);
    for (std::size_t c = c0; c < c1; ++c) out.data[r * out.cols + c] = poly.eval_with_table(tables[r], t_grid[c]);
  });
  return out;
}

GridValues eval_grid(const PolySpec& spec, const std::vector<DirichletCharacter>& characters,
                     const std::vector<double>& t_grid, std::size_t memory_budget) {
  return eval_grid(DirichletPoly(spec), characters, t_grid, memory_budget);
}

}  // namespace lvlab
