#include <algorithm>
#include <cmath>
#include <string>

#include "lvlab/bump.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/quadrature.hpp"
#include "lvlab/spectral.hpp"

namespace lvlab {

double AffineProfile::operator()(double u) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * default_psi0()(2.0 * (u - center) / radius);
}

// psi_0 integrates to 3 (plateau 2, transitions 1/2 each by the glue symmetry)
double AffineProfile::l1() const { return amplitude * radius * 0.5 * 3.0; }

double AffineProfile::l2_sq() const { return amplitude * amplitude * radius * 0.5 * default_psi0().l2_norm_sq(); }

namespace {

std::vector<i64> reduced(u64 q) {
  std::vector<i64> u;
  for (u64 a = 1; a <= q; ++a)
    if (gcd_u(a, q) == 1) u.push_back(static_cast<i64>(a));
  return u;
}

void validate(const AffineSumSpec& spec) {
  if (spec.q < 1) throw InvalidInput("j_affine: q must be >= 1");
  if (spec.M < 1) throw InvalidInput("j_affine: M must be >= 1");
  if (spec.profiles.size() != euler_phi(spec.q))
    throw InvalidInput("j_affine: need one profile per reduced residue (" + std::to_string(euler_phi(spec.q)) + ")");
  for (const auto& p : spec.profiles)
    if (!(p.radius > 0.0) || p.amplitude < 0.0) throw InvalidInput("j_affine: profiles need radius > 0, amplitude >= 0");
}

struct CellPlan {
  double lo = 0.0, hi = 0.0;
  std::size_t panels = 0;
  double work = 0.0;
  bool empty = true;
};

// Integration range and resolution for one dyadic cell. Every f_b is C-infinity
// with compact support, so the integrand is smooth and a uniform composite rule
// converges quickly once panels resolve the narrowest transition.
CellPlan plan_cell(const AffineSumSpec& spec, u64 M1, u64 M2, u64 M3) {
  CellPlan p;
  double min_feature = INFINITY, active = 0.0;
  p.lo = INFINITY;
  p.hi = -INFINITY;
  for (const auto& f : spec.profiles) {
    if (f.amplitude == 0.0) continue;
    p.empty = false;
    for (double m1 : {static_cast<double>(M1) + 1.0, 2.0 * static_cast<double>(M1)})
      for (double m2 : {static_cast<double>(M2) + 1.0, 2.0 * static_cast<double>(M2)}) {
        min_feature = std::min(min_feature, 0.5 * f.radius * m2 / m1);
        for (double sgn : {-1.0, 1.0})
          for (double m3 : {-static_cast<double>(M3), static_cast<double>(M3)})
            for (double x : {f.center - f.radius, f.center + f.radius}) {
              double u = (m2 * x - m3) / (sgn * m1);
              p.lo = std::min(p.lo, u);
              p.hi = std::max(p.hi, u);
            }
      }
    active += 2.0 * static_cast<double>(M1) * static_cast<double>(M2) * (2.0 * f.radius * 2.0 * static_cast<double>(M2) + 1.0);
  }
  if (p.empty) return p;
  p.panels = static_cast<std::size_t>(std::ceil(4.0 * (p.hi - p.lo) / min_feature));
  const double nodes = static_cast<double>(p.panels) * 16.0 * 8.0;
  p.work = nodes * active * static_cast<double>(spec.profiles.size());
  return p;
}

}  // namespace

double j_affine_fixed(const AffineSumSpec& spec, u64 M1, u64 M2, u64 M3) {
  validate(spec);
  CellPlan plan = plan_cell(spec, M1, M2, M3);
  if (plan.empty) return 0.0;
  const auto units = reduced(spec.q);
  const i64 q = static_cast<i64>(spec.q);
  std::vector<double> gcd_of(static_cast<std::size_t>(q));
  for (i64 r = 0; r < q; ++r) gcd_of[static_cast<std::size_t>(r)] = static_cast<double>(gcd_u(static_cast<u64>(r), spec.q));
  const i64 iM1 = static_cast<i64>(M1), iM2 = static_cast<i64>(M2), iM3 = static_cast<i64>(M3);
  std::vector<double> g(units.size());
  auto integrand = [&](double u) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t bi = 0; bi < units.size(); ++bi) {
      const auto& f = spec.profiles[bi];
      if (f.amplitude == 0.0) continue;
      const i64 b = units[bi];
      for (i64 a1 = iM1 + 1; a1 <= 2 * iM1; ++a1)
        for (i64 m1 : {-a1, a1})
          for (i64 m2 = iM2 + 1; m2 <= 2 * iM2; ++m2) {
            // m3 with (m1 u + m3)/m2 inside the support
            const double md = static_cast<double>(m2), base = static_cast<double>(m1) * u;
            i64 lo3 = std::max(-iM3, static_cast<i64>(std::ceil(md * (f.center - f.radius) - base)));
            i64 hi3 = std::min(iM3, static_cast<i64>(std::floor(md * (f.center + f.radius) - base)));
            for (i64 m3 = lo3; m3 <= hi3; ++m3) {
              double v = f((base + static_cast<double>(m3)) / md);
              if (v == 0.0) continue;
              for (std::size_t ai = 0; ai < units.size(); ++ai) {
                i64 r = mod_floor(units[ai] * m1 + b * m2 + m3, q);
                g[ai] += v * gcd_of[static_cast<std::size_t>(r)];
              }
            }
          }
    }
    double s = 0.0;
    for (double x : g) s += x * x;
    return s;
  };
  return integrate_adaptive(integrand, {plan.lo, plan.hi}, plan.panels, 1e-10, 1e-300, 10).value;
}

AffineReport j_affine(const AffineSumSpec& spec, double budget) {
  validate(spec);
  std::vector<u64> dyadic;
  for (u64 m = 1; m < spec.M; m *= 2) dyadic.push_back(m);
  AffineReport rep;
  const double phi = static_cast<double>(euler_phi(spec.q));
  double work = 0.0;
  for (u64 M1 : dyadic)
    for (u64 M2 : dyadic)
      for (u64 M3 : dyadic) work += plan_cell(spec, M1, M2, M3).work;
  if (work > budget)
    throw BudgetExceeded("j_affine: estimated work " + std::to_string(work) + " exceeds budget " + std::to_string(budget));
  for (u64 M1 : dyadic)
    for (u64 M2 : dyadic)
      for (u64 M3 : dyadic) {
        double J = j_affine_fixed(spec, M1, M2, M3);
        if (J > rep.J) {
          rep.J = J;
          rep.argmax = {M1, M2, M3};
        }
      }
  double l1 = 0.0, l2 = 0.0;
  for (const auto& p : spec.profiles) {
    l1 += p.l1();
    l2 += p.l2_sq();
  }
  const double M = static_cast<double>(spec.M);
  rep.rhs = phi * std::pow(M, 6) * l1 * l1 + phi * phi * std::pow(M, 4) * l2;
  rep.ratio = rep.rhs > 0.0 ? rep.J / rep.rhs : 0.0;
  return rep;
}

AffineReport bsoat_check(const AffineSumSpec& spec, double budget) { return j_affine(spec, budget); }

}  // namespace lvlab
