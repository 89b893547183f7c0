#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lvlab/errors.hpp"
#include "lvlab/lfunc.hpp"
#include "lvlab/parallel.hpp"

namespace lvlab {

namespace {

constexpr double kBoundaryTol = 1e-8;
constexpr double kBaseStep = 0.1;
constexpr double kSplitBias = 0.0137;  // keeps split lines off s = 1 and t = 0
constexpr double kLocateSize = 0.05;

struct BoundaryZero {};

struct Box {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(cplx z, double tol) const {
    return z.real() >= x0 - tol && z.real() <= x1 + tol && z.imag() >= y0 - tol && z.imag() <= y1 + tol;
  }
};

class Tracker {
 public:
  Tracker(const LFunction& L, bool pole) : L_(L), pole_(pole) {}

  std::size_t evaluations() const { return evals_; }

  // Zeros inside the box counted with multiplicity.
  long zeros_in(const Box& b) {
    const cplx c0(b.x0, b.y0), c1(b.x1, b.y0), c2(b.x1, b.y1), c3(b.x0, b.y1);
    const double turn = edge(c0, c1) + edge(c1, c2) + edge(c2, c3) + edge(c3, c0);
    const double w = turn / (2.0 * std::numbers::pi);
    const double r = std::round(w);
    if (std::abs(w - r) > 0.1) throw InvariantFailure("count_zeros: winding number " + std::to_string(w) + " is not near an integer");
    long n = static_cast<long>(r);
    if (pole_ && b.x0 < 1.0 && b.x1 > 1.0 && b.y0 < 0.0 && b.y1 > 0.0) n += 1;
    if (n < 0) throw InvariantFailure("count_zeros: negative zero count in a box");
    return n;
  }

  void locate(const Box& b, long n, std::vector<LocatedZero>& out, int depth = 0) {
    if (n == 0) return;
    const double size = std::max(b.width(), b.height());
    // A simple zero whose Newton limit stays inside its box is that zero.
    if (n == 1 && size >= kLocateSize) {
      const cplx z = newton(cplx(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)), size);
      const cplx v = L_(z);
      if (b.contains(z, 0.0) && std::abs(v) < 1e-10) {
        out.push_back({z.real(), z.imag(), std::abs(v), 1});
        return;
      }
    }
    if (size < kLocateSize || depth > 80) {
      const cplx guess(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1));
      cplx z = newton(guess, 2.0 * size + 1e-6);
      const double tol = std::max(1e-9, 0.05 * size);
      if (b.contains(z, tol) || size < 1e-9 || depth > 80) {
        if (!b.contains(z, tol)) z = guess;
        out.push_back({z.real(), z.imag(), std::abs(L_(z)), static_cast<int>(n)});
        return;
      }
    }
    Box a = b, c = b;
    if (b.width() >= b.height()) {
      const double xm = b.x0 + (0.5 + kSplitBias) * b.width();
      a.x1 = xm;
      c.x0 = xm;
    } else {
      const double ym = b.y0 + (0.5 + kSplitBias) * b.height();
      a.y1 = ym;
      c.y0 = ym;
    }
    const long na = zeros_in(a);
    const long nc = n - na;
    if (nc < 0) throw InvariantFailure("count_zeros: inconsistent counts during localization");
    // Lower child first keeps the output sorted by t when splitting in t.
    locate(a, na, out, depth + 1);
    locate(c, nc, out, depth + 1);
  }

 private:
  cplx eval(cplx s) {
    ++evals_;
    const cplx v = L_(s);
    if (std::abs(v) < kBoundaryTol) throw BoundaryZero{};
    return v;
  }

  double edge(cplx a, cplx b) {
    const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil(std::abs(b - a) / kBaseStep)));
    double total = 0.0;
    cplx zp = a, vp = eval(a);
    for (std::size_t k = 1; k <= n; ++k) {
      const cplx z = a + (b - a) * (static_cast<double>(k) / static_cast<double>(n));
      const cplx v = eval(z);
      total += segment(zp, vp, z, v, 0);
      zp = z;
      vp = v;
    }
    return total;
  }

  // Halve until the argument step is below 1/2 and the value is nearly linear.
  double segment(cplx z0, cplx v0, cplx z1, cplx v1, int depth) {
    const double d = std::arg(v1 / v0);
    if (std::abs(d) < 0.5 && std::abs(v1 - v0) <= 0.5 * std::min(std::abs(v0), std::abs(v1))) return d;
    if (depth > 60 || std::abs(z1 - z0) < 1e-13) throw InvariantFailure("count_zeros: argument tracking did not resolve");
    const cplx zm = 0.5 * (z0 + z1);
    const cplx vm = eval(zm);
    return segment(z0, v0, zm, vm, depth + 1) + segment(zm, vm, z1, v1, depth + 1);
  }

  // Stops early once the iterate leaves a disc of the given radius.
  cplx newton(cplx z, double radius) {
    const cplx start = z;
    for (int it = 0; it < 60; ++it) {
      if (std::abs(z - start) > radius) break;
      const cplx v = L_(z);
      evals_ += 3;
      if (std::abs(v) < 1e-15) break;
      const double h = 1e-6;
      const cplx dv = (L_(z + h) - L_(z - h)) / (2.0 * h);
      if (std::abs(dv) == 0.0) break;
      const cplx step = v / dv;
      z -= step;
      if (std::abs(step) < 1e-14) break;
    }
    return z;
  }

  const LFunction& L_;
  bool pole_;
  std::size_t evals_ = 0;
};

struct WindowResult {
  long count = 0;
  std::vector<LocatedZero> zeros;
  std::size_t evals = 0;
};

ZeroCount run_count(double sigma, double T, const LFunction& L, const ZeroCountOptions& opt) {
  // An odd window count keeps every window boundary away from t = 0.
  auto nw = static_cast<std::size_t>(std::ceil(2.0 * T / opt.window_height));
  if (nw % 2 == 0) ++nw;
  const double h = 2.0 * T / static_cast<double>(nw);
  const double x0 = sigma - opt.left_margin;
  std::vector<WindowResult> res(nw);
  auto body = [&](std::size_t k) {
    Tracker tr(L, L.has_pole());
    Box b{x0, opt.right_edge, -T + h * static_cast<double>(k),
          k + 1 == nw ? T : -T + h * static_cast<double>(k + 1)};
    res[k].count = tr.zeros_in(b);
    if (opt.locate) tr.locate(b, res[k].count, res[k].zeros);
    res[k].evals = tr.evaluations();
  };
  if (opt.parallel) {
    parallel_for(nw, body);
  } else {
    for (std::size_t k = 0; k < nw; ++k) body(k);
  }
  ZeroCount out{sigma, T, 0, {}, 0, 0};
  for (auto& r : res) {
    out.count += r.count;
    out.evaluations += r.evals;
    out.zeros.insert(out.zeros.end(), r.zeros.begin(), r.zeros.end());
  }
  std::stable_sort(out.zeros.begin(), out.zeros.end(),
                   [](const LocatedZero& a, const LocatedZero& b) { return a.t < b.t; });
  return out;
}

}  // namespace

ZeroCount count_zeros(double sigma, double T, const DirichletCharacter& chi, const ZeroCountOptions& opt) {
  if (!(sigma >= 0.5 && sigma < 1.0)) throw InvalidInput("count_zeros: sigma must lie in [1/2, 1)");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("count_zeros: T must be positive");
  if (T > opt.max_T) throw BudgetExceeded("count_zeros: T = " + std::to_string(T) + " exceeds the budget " + std::to_string(opt.max_T));
  if (!(opt.right_edge > 1.0) || !(opt.window_height > 0.0) || opt.left_margin < 0.0)
    throw InvalidInput("count_zeros: bad contour options");
  const LFunction L(chi);
  for (int r = 0; r <= opt.boundary_retries; ++r) {
    const double Tr = T + 1e-3 * r;
    try {
      ZeroCount out = run_count(sigma, Tr, L, opt);
      out.retries = r;
      return out;
    } catch (const BoundaryZero&) {
    }
  }
  throw InvariantFailure("count_zeros: |L| < 1e-8 on the contour after " + std::to_string(opt.boundary_retries) +
                         " height perturbations");
}

ZeroReport density_scan(u64 q, double T, std::vector<double> sigma_grid, const DensityBudget& budget,
                        const ZeroCountOptions& opt) {
  if (q < 1) throw InvalidInput("density_scan: q must be >= 1");
  if (!(T > 0.0)) throw InvalidInput("density_scan: T must be positive");
  if (sigma_grid.empty()) throw InvalidInput("density_scan: empty sigma grid");
  if (q > budget.max_q || T > budget.max_T)
    throw BudgetExceeded("density_scan: (q, T) outside the budget q <= " + std::to_string(budget.max_q) +
                         ", T <= " + std::to_string(budget.max_T));
  std::sort(sigma_grid.begin(), sigma_grid.end());
  sigma_grid.erase(std::unique(sigma_grid.begin(), sigma_grid.end()), sigma_grid.end());
  for (double s : sigma_grid)
    if (!(s >= 0.5 && s < 1.0)) throw InvalidInput("density_scan: every sigma must lie in [1/2, 1)");

  const CharacterGroup group = build_group(q);
  const std::size_t nc = group.characters.size();
  const std::size_t ns = sigma_grid.size();
  std::vector<ZeroCount> jobs(ns * nc);
  ZeroCountOptions inner = opt;
  inner.parallel = false;
  parallel_for(ns * nc, [&](std::size_t j) {
    const std::size_t si = j / nc, ci = j % nc;
    ZeroCountOptions o = inner;
    o.locate = si == 0;
    jobs[j] = count_zeros(sigma_grid[si], T, group.characters[ci], o);
  });

  ZeroReport rep;
  rep.q = q;
  rep.T = T;
  rep.sigma_grid = sigma_grid;
  rep.monotone = true;
  const double lqt = std::log(static_cast<double>(q) * T);
  for (std::size_t si = 0; si < ns; ++si) {
    std::vector<long> row(nc);
    long total = 0;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      row[ci] = jobs[si * nc + ci].count;
      total += row[ci];
      if (si > 0 && row[ci] > rep.counts[si - 1][ci]) rep.monotone = false;
    }
    rep.counts.push_back(std::move(row));
    rep.totals.push_back(total);
    const double s = sigma_grid[si];
    rep.exponents.push_back(total > 0 ? std::optional<double>(std::log(static_cast<double>(total)) / lqt) : std::nullopt);
    rep.prediction_corollary.push_back(std::exp(7.0 * (1.0 - s) / 3.0 * lqt));
    const double pd = std::exp(4.0 * (1.0 - s) / (1.0 + s) * lqt);
    rep.prediction_density.push_back(pd);
    rep.ratios.push_back(static_cast<double>(total) / pd);
  }
  for (std::size_t ci = 0; ci < nc; ++ci) rep.zero_list.push_back(jobs[ci].zeros);
  return rep;
}

ZeroClassification classify_zero(cplx rho, const DirichletCharacter& chi, const MollifierSpec& moll, double T,
                                 const ClassifyOptions& opt) {
  if (moll.X < 2 || moll.Y < 2.0) throw InvalidInput("classify_zero: X and Y must be >= 2");
  if (moll.coefficients.empty()) throw InvalidInput("classify_zero: mollifier coefficients missing");
  if (!(T > 1.0)) throw InvalidInput("classify_zero: T must exceed 1");
  if (!(opt.step > 0.0) || !(opt.threshold > 0.0)) throw InvalidInput("classify_zero: bad options");

  const LFunction L(chi);
  const double beta = rho.real(), t = rho.imag();
  const u64 X = moll.X;

  cplx first(0.0, 0.0);
  for (u64 n = X + 1; n <= moll.cutoff(); ++n) {
    const double c = moll.coefficients[n];
    if (c == 0.0) continue;
    const cplx ch = L.chi(static_cast<i64>(n));
    if (ch == cplx(0.0, 0.0)) continue;
    const double ln = std::log(static_cast<double>(n));
    first += c * ch * std::exp(-rho * ln - static_cast<double>(n) / moll.Y);
  }

  // M_X(s) = sum_{n <= X} mu(n) chi(n) n^{-s}.
  const auto mobius_block = [&] {
    std::vector<double> mu(X + 1, 0.0);
    for (u64 n = 1; n <= X; ++n) mu[n] = static_cast<double>(mobius(n));
    return mu;
  }();
  auto mx = [&](cplx s) {
    cplx acc(0.0, 0.0);
    for (u64 n = 1; n <= X; ++n) {
      if (mobius_block[n] == 0.0) continue;
      acc += mobius_block[n] * L.chi(static_cast<i64>(n)) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return acc;
  };

  // Midpoint nodes: at beta = 1/2 the Gamma factor has a pole at u = 0 that the zero of L cancels.
  const double lt = std::log(T);
  const double U = lt * lt;
  // even node count keeps u = 0 between two midpoints
  const auto K = 2 * static_cast<std::size_t>(std::max(1.0, std::round(U / opt.step)));
  const double h = 2.0 * U / static_cast<double>(K);
  const double lY = std::log(moll.Y);
  cplx second(0.0, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const double u = -U + (static_cast<double>(k) + 0.5) * h;
    const cplx s(0.5, t + u);
    const cplx z(0.5 - beta, u);
    second += h * L(s) * mx(s) * std::exp(z * lY + log_gamma(z));
  }

  cplx principal(0.0, 0.0);
  if (L.has_pole()) {
    const double q = static_cast<double>(chi.q());
    const double ratio = static_cast<double>(euler_phi(chi.q())) / q;
    principal = ratio * mx(cplx(1.0, 0.0)) * std::exp((1.0 - rho) * lY + log_gamma(1.0 - rho));
  }

  ZeroClassification out{};
  out.class_one_magnitude = std::abs(first);
  out.class_two_magnitude = std::abs(second);
  out.class_one = out.class_one_magnitude >= opt.threshold;
  out.class_two = out.class_two_magnitude >= opt.threshold;
  out.principal_term = std::abs(principal);
  const cplx lhs = std::exp(-1.0 / moll.Y) + first;
  const cplx rhs = second / (2.0 * std::numbers::pi) + L(rho) * mx(rho) + principal;
  out.identity_residual = std::abs(lhs - rhs);
  out.outside_dichotomy = std::abs(t) < opt.small_t_constant * std::log(static_cast<double>(chi.q()) * T);
  return out;
}

}  // namespace lvlab
