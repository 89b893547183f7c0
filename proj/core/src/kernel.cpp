#include "lvlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "lvlab/errors.hpp"
#include "lvlab/quadrature.hpp"

namespace lvlab {

namespace {

using cld = std::complex<long double>;

constexpr std::size_t kPanelOrder = 16;
constexpr int kMaxDoublings = 6;
constexpr double kAgreeTol = 1e-9;
constexpr double kFailTol = 1e-8;
// depth of the flat part of each trapezoid, as a fraction of the transition width
constexpr long double kDepth = 0.25L;
constexpr long double kLogTiny = -11300.0L;

const long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

struct LegResult {
  cld value{0.0L, 0.0L};
  long double err = 0.0L;
  long double scale = 0.0L;
};

cld logistic(cld e) {
  // 1 / (1 + exp(e)), saturating cleanly far from the origin
  if (e.real() > 12000.0L) return {0.0L, 0.0L};
  if (e.real() < -12000.0L) return {1.0L, 0.0L};
  if (e.real() > 0) {
    cld z = std::exp(-e);
    return z / (1.0L + z);
  }
  return 1.0L / (1.0L + std::exp(e));
}

// Integrates f(r) dr * span over r in [0, 1]. When graded is true, panels
// shrink geometrically towards r = 0, where f has an essential zero.
LegResult integrate_leg(cld span, const std::function<cld(long double)>& f, bool graded, std::size_t uniform_panels) {
  auto run = [&](std::size_t order) {
    const auto& g = gauss_legendre(order);
    cld total{0.0L, 0.0L};
    long double scale = 0.0L;
    auto panel = [&](long double r0, long double r1) {
      long double h = 0.5L * (r1 - r0), c = 0.5L * (r1 + r0);
      cld s{0.0L, 0.0L};
      for (std::size_t i = 0; i < order; ++i) {
        cld v = f(c + h * g.x[i]);
        s += g.w[i] * v;
        scale += g.w[i] * h * std::abs(v);
      }
      total += s * h;
    };
    if (graded) {
      for (int k = 48; k >= 1; --k) panel(std::ldexp(1.0L, -k), std::ldexp(1.0L, -k + 1));
    } else {
      for (std::size_t p = 0; p < uniform_panels; ++p)
        panel(static_cast<long double>(p) / uniform_panels, static_cast<long double>(p + 1) / uniform_panels);
    }
    return std::pair<cld, long double>{total * span, scale * std::abs(span)};
  };
  LegResult out;
  auto prev = run(kPanelOrder);
  std::size_t order = kPanelOrder;
  for (int it = 0; it < 4; ++it) {
    order *= 2;
    auto cur = run(order);
    long double diff = std::abs(cur.first - prev.first);
    out = {cur.first, diff, cur.second};
    prev = cur;
    if (diff <= 1e-13L * cur.second) break;
  }
  return out;
}

}  // namespace

Kernel::Kernel(Bump w) : w_(std::move(w)) {}

bool Kernel::use_contour(double t, double xi) {
  double a = std::fabs(xi);
  return a >= std::max(4.0, 2.0 * (1.0 + std::fabs(t)));
}

const Kernel::Nodes& Kernel::nodes(std::size_t panels) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = cache_[panels];
  if (!slot) {
    auto nd = std::make_unique<Nodes>();
    const auto& g = gauss_legendre(kPanelOrder);
    const double lo = w_.lo(), hi = w_.hi();
    const double width = (hi - lo) / static_cast<double>(panels);
    nd->u.reserve(panels * kPanelOrder);
    for (std::size_t p = 0; p < panels; ++p) {
      double a = lo + width * static_cast<double>(p);
      double c = a + 0.5 * width;
      for (std::size_t i = 0; i < kPanelOrder; ++i) {
        double u = c + 0.5 * width * static_cast<double>(g.x[i]);
        double wu = w_(u);
        nd->u.push_back(u);
        nd->wt.push_back(0.5 * width * static_cast<double>(g.w[i]) * wu * wu);
        nd->logu.push_back(std::log(u));
      }
    }
    slot = std::move(nd);
  }
  return *slot;
}

std::complex<double> Kernel::sum_real_line(const Nodes& nd, double t, double xi) const {
  const double tp = 2.0 * std::numbers::pi;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < nd.u.size(); ++i) {
    if (nd.wt[i] == 0.0) continue;
    double ph = t * nd.logu[i] - tp * xi * nd.u[i];
    re += nd.wt[i] * std::cos(ph);
    im += nd.wt[i] * std::sin(ph);
  }
  return {re, im};
}

KernelEval Kernel::h_hat_real_line(double t, double xi) const {
  const double span = w_.hi() - w_.lo();
  double need = std::max(32.0, 8.0 * std::ceil((std::fabs(t) + std::fabs(xi)) * span));
  // panel count is a multiple of 5 so that the glue breakpoints fall on panel edges
  std::size_t panels = static_cast<std::size_t>(std::ceil(need / kPanelOrder));
  panels = ((panels + 4) / 5) * 5;
  auto prev = sum_real_line(nodes(panels), t, xi);
  double diff = 0.0;
  std::complex<double> cur = prev;
  for (int k = 0; k < kMaxDoublings; ++k) {
    panels *= 2;
    cur = sum_real_line(nodes(panels), t, xi);
    diff = std::abs(cur - prev);
    if (diff <= kAgreeTol) break;
    prev = cur;
  }
  if (diff > kFailTol)
    throw QuadratureError("h_hat: real-line quadrature did not converge at t=" + std::to_string(t) +
                          " xi=" + std::to_string(xi));
  KernelEval e;
  e.t = t;
  e.xi = xi;
  e.value = cur;
  e.quadrature_error_estimate = diff;
  e.log_abs = std::log(std::abs(cur));
  e.method = KernelMethod::real_line;
  return e;
}

KernelEval Kernel::h_hat_contour(double t_in, double xi_in) const {
  if (xi_in == 0.0) throw InvalidInput("h_hat_contour: xi must be nonzero");
  // h_t(-xi) = conj(h_{-t}(xi)); work with xi > 0
  const bool flip = xi_in < 0.0;
  const long double t = flip ? -t_in : t_in;
  const long double xi = std::fabs(static_cast<long double>(xi_in));
  const long double alpha = w_.alpha();
  const long double lo = w_.lo(), hi = w_.hi(), plo = w_.plateau_lo(), phi = w_.plateau_hi();
  const long double Ll = plo - lo, Lr = hi - phi;
  const cld I{0.0L, 1.0L};
  const long double d = kDepth;

  auto K = [&](cld u) { return std::exp(I * t * std::log(u) - I * kTwoPi * xi * u); };
  // Glue variable x runs 0 -> 1 across each transition (rising on the left,
  // mirrored on the right). Legs are parametrised by the offset z from their
  // singular end so that x or 1 - x never loses digits to cancellation.
  auto s_of = [&](cld x, cld omx) { return logistic(alpha / x - alpha / omx); };
  auto c_of = [&](cld x, cld omx) { return logistic(alpha / omx - alpha / x); };

  const cld dir_l{d, -d};        // x-offset of the left trapezoid corner from x = 0
  const cld dir_r{d, d};         // same on the right (u = hi - Lr x)
  const cld dir_lc{-d, -d};      // x-offset of the corner next to x = 1 on the left
  const cld dir_rc{-d, d};

  cld total{0.0L, 0.0L};
  long double err = 0.0L, scale = 0.0L;
  auto add = [&](const LegResult& r, long double sign) {
    total += sign * r.value;
    err += r.err;
    scale += r.scale;
  };

  // lo -> A : x = z dir_l
  add(integrate_leg(Ll * dir_l, [&](long double r) {
        cld x = r * dir_l;
        cld s = s_of(x, 1.0L - x);
        return s * s * K(lo + Ll * x);
      }, true, 0), 1.0L);
  // B -> plo : integrand (s^2 - 1) K, x = 1 + z dir_lc, integrated from plo outwards
  add(integrate_leg(Ll * dir_lc, [&](long double r) {
        cld omx = -r * dir_lc;
        cld x = 1.0L - omx;
        cld c = c_of(x, omx);
        return -c * (2.0L - c) * K(plo + Ll * (r * dir_lc));
      }, true, 0), -1.0L);
  // phi -> B' : x = 1 + z dir_rc with u = hi - Lr x
  add(integrate_leg(-Lr * dir_rc, [&](long double r) {
        cld omx = -r * dir_rc;
        cld x = 1.0L - omx;
        cld c = c_of(x, omx);
        return -c * (2.0L - c) * K(phi - Lr * (r * dir_rc));
      }, true, 0), 1.0L);
  // A' -> hi : x = z dir_r, integrated from hi outwards
  add(integrate_leg(-Lr * dir_r, [&](long double r) {
        cld x = r * dir_r;
        cld s = s_of(x, 1.0L - x);
        return s * s * K(hi - Lr * x);
      }, true, 0), -1.0L);

  const cld A = lo + Ll * dir_l;
  const cld B = plo + Ll * dir_lc;
  const cld Bp = phi - Lr * dir_rc;
  const cld Ap = hi - Lr * dir_r;

  // flat pieces: skip when they cannot affect the total at long double precision
  const long double cut = (scale > 0.0L ? std::log(scale) : kLogTiny) - 60.0L;
  auto flat = [&](cld a, cld b, const std::function<cld(cld)>& f) {
    auto lb = [&](cld u) { return -t * std::arg(u) + kTwoPi * xi * u.imag(); };
    long double bound = std::max(lb(a), lb(b)) + 10.0L;
    if (bound < kLogTiny || bound < cut) return;
    long double len = std::abs(b - a);
    auto panels = static_cast<std::size_t>(std::clamp<long double>(std::ceil((xi + std::fabs(t)) * len), 2.0L, 200000.0L));
    add(integrate_leg(b - a, [&](long double r) { return f(a + r * (b - a)); }, false, panels), 1.0L);
  };
  flat(A, B, [&](cld u) {
    cld x = (u - lo) / Ll;
    cld s = s_of(x, 1.0L - x);
    return s * s * K(u);
  });
  flat(B, Bp, K);
  flat(Bp, Ap, [&](cld u) {
    cld x = (hi - u) / Lr;
    cld s = s_of(x, 1.0L - x);
    return s * s * K(u);
  });

  if (err > static_cast<long double>(kFailTol) * std::max(scale, std::abs(total)))
    throw QuadratureError("h_hat: contour quadrature did not converge at t=" + std::to_string(t_in) +
                          " xi=" + std::to_string(xi_in));

  if (flip) total = std::conj(total);
  KernelEval e;
  e.t = t_in;
  e.xi = xi_in;
  e.value = {static_cast<double>(total.real()), static_cast<double>(total.imag())};
  e.quadrature_error_estimate = static_cast<double>(err);
  e.log_abs = static_cast<double>(std::log(std::abs(total)));
  e.method = KernelMethod::deformed_contour;
  return e;
}

KernelEval Kernel::h_hat(double t, double xi) const {
  if (std::fabs(t) > 1e6 || std::fabs(xi) > 1e8)
    throw InvalidInput("h_hat: |t| <= 1e6 and |xi| <= 1e8 required");
  if (use_contour(t, xi)) return h_hat_contour(t, xi);
  return h_hat_real_line(t, xi);
}

const Kernel& default_kernel() {
  static const Kernel k(default_w());
  return k;
}

KernelEval h_hat(double t, double xi) { return default_kernel().h_hat(t, xi); }

}  // namespace lvlab
