#include "lvlab/lfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lvlab/errors.hpp"
#include "lvlab/poly.hpp"

namespace lvlab {

namespace {

using ld = long double;
using cld = std::complex<ld>;

// B_{2k} / (2k)! for k = 1..10.
constexpr ld kBernoulliOverFactorial[10] = {
    1.0L / 6 / 2,
    -1.0L / 30 / 24,
    1.0L / 42 / 720,
    -1.0L / 30 / 40320,
    5.0L / 66 / 3628800,
    -691.0L / 2730 / 479001600,
    7.0L / 6 / 87178291200.0L,
    -3617.0L / 510 / 20922789888000.0L,
    43867.0L / 798 / 6402373705728000.0L,
    -174611.0L / 330 / 2432902008176640000.0L,
};

void check_s(cplx s, bool* degraded) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw InvalidInput("hurwitz_zeta: non-finite s");
  if (std::abs(s.imag()) > kMaxImagS)
    throw InvalidInput("hurwitz_zeta: |Im s| = " + std::to_string(std::abs(s.imag())) + " exceeds 1e4");
  if (degraded && std::abs(s.imag()) > kDegradedImagS) *degraded = true;
}

std::size_t direct_terms(cplx s) {
  return static_cast<std::size_t>(std::ceil(0.7 * (std::abs(s) + 40.0)));
}

// (e^z - 1)/z without cancellation near 0.
template <class F>
std::complex<F> expm1_over(std::complex<F> z) {
  if (std::abs(z) < F(0.1)) {
    std::complex<F> term = 1, sum = 1;
    for (int k = 2; k < 16; ++k) {
      term *= z / static_cast<F>(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - std::complex<F>(1)) / z;
}

// Everything except the (M+a)^{1-s}/(s-1) piece.
template <class F>
std::complex<F> em_body(std::complex<F> s, F a, std::size_t M) {
  using C = std::complex<F>;
  C sum = 0;
  for (std::size_t n = 0; n < M; ++n) {
    const F l = std::log(static_cast<F>(n) + a);
    sum += std::exp(-s.real() * l) * C(std::cos(s.imag() * l), -std::sin(s.imag() * l));
  }
  const F x = static_cast<F>(M) + a;
  const F lx = std::log(x);
  C xs = std::exp(-s * lx);  // x^{-s}
  sum += xs / F(2);
  C rising = s;              // s (s+1) ... (s+2k-2)
  C power = xs / x;          // x^{-s-2k+1}
  for (int k = 1; k <= 10; ++k) {
    sum += static_cast<F>(kBernoulliOverFactorial[k - 1]) * rising * power;
    rising *= (s + F(2 * k - 1)) * (s + F(2 * k));
    power /= x * x;
  }
  return sum;
}

template <class F>
std::complex<F> tail_full(std::complex<F> s, F a, std::size_t M) {
  const F x = static_cast<F>(M) + a;
  return std::exp((F(1) - s) * std::log(x)) / (s - F(1));
}

// ((M+a)^{1-s} - 1)/(s-1) = -log x (e^z - 1)/z with z = (1-s) log x.
template <class F>
std::complex<F> tail_regular(std::complex<F> s, F a, std::size_t M) {
  const F lx = std::log(static_cast<F>(M) + a);
  return -lx * expm1_over((F(1) - s) * lx);
}

// Double carries the phase t log n to ~1e-12 up to |t| = 1e3; long double beyond.
bool wide(cplx s) { return std::abs(s.imag()) > kDegradedImagS; }

template <class F>
cplx to_cplx(std::complex<F> v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

template <class F>
cplx hurwitz_impl(cplx s, double a, bool regular) {
  const std::size_t M = direct_terms(s);
  const std::complex<F> sl(s.real(), s.imag());
  const F af = a;
  return to_cplx(em_body(sl, af, M) + (regular ? tail_regular(sl, af, M) : tail_full(sl, af, M)));
}

void check_a(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidInput("hurwitz_zeta: a must lie in (0, 1]");
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a, bool* degraded) {
  check_s(s, degraded);
  check_a(a);
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-15) throw InvalidInput("hurwitz_zeta: pole at s = 1");
  return wide(s) ? hurwitz_impl<ld>(s, a, false) : hurwitz_impl<double>(s, a, false);
}

cplx hurwitz_zeta_regular(cplx s, double a, bool* degraded) {
  check_s(s, degraded);
  check_a(a);
  return wide(s) ? hurwitz_impl<ld>(s, a, true) : hurwitz_impl<double>(s, a, true);
}

cplx log_gamma(cplx z) {
  static constexpr double g = 7.0;
  static constexpr double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real())) throw InvalidInput("log_gamma: pole at a non-positive integer");
    const cplx sn = std::sin(pi * z);
    return std::log(pi) - std::log(sn) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  const cplx t = z + g + 0.5;
  return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx complex_gamma(cplx z) { return std::exp(log_gamma(z)); }

LFunction::LFunction(const DirichletCharacter& chi)
    : q_(chi.q()), conductor_(chi.conductor()), pole_(chi.is_principal()), table_(chi.value_table()) {
  std::optional<PrimitiveInducing> prim;
  if (conductor_ == 1) {
    residues_.push_back({1.0, cld(1)});
  } else {
    prim = primitive_character(chi);
    for (u64 a = 1; a < conductor_; ++a) {
      const cplx v = prim->primitive(static_cast<i64>(a));
      if (v == cplx(0.0, 0.0)) continue;
      residues_.push_back({static_cast<double>(a) / static_cast<double>(conductor_), cld(v.real(), v.imag())});
    }
  }
  for (const auto& pp : factorize(q_)) {
    if (conductor_ % pp.p == 0) continue;
    const cplx v = prim ? prim->primitive(static_cast<i64>(pp.p)) : cplx(1.0, 0.0);
    euler_.push_back({static_cast<double>(pp.p), v});
  }
}

cplx LFunction::operator()(cplx s, bool* degraded) const {
  check_s(s, degraded);
  return wide(s) ? eval<ld>(s) : eval<double>(s);
}

template <class F>
cplx LFunction::eval(cplx s) const {
  using C = std::complex<F>;
  const C sl(s.real(), s.imag());
  const std::size_t M = direct_terms(s);
  C total;
  if (conductor_ == 1) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-15) throw InvalidInput("l_value: pole at s = 1 for a principal character");
    total = em_body(sl, F(1), M) + tail_full(sl, F(1), M);
  } else {
    // Sum of chi*(a) over a full period vanishes, so the pole parts cancel.
    C acc = 0;
    for (const auto& [a, c] : residues_) {
      const F af = a;
      acc += C(static_cast<F>(c.real()), static_cast<F>(c.imag())) * (em_body(sl, af, M) + tail_regular(sl, af, M));
    }
    total = acc * std::exp(-sl * std::log(static_cast<F>(conductor_)));
  }
  cplx out = to_cplx(total);
  for (const auto& [p, c] : euler_) out *= 1.0 - c * std::exp(-s * std::log(p));
  return out;
}

cplx l_value(cplx s, const DirichletCharacter& chi) { return LFunction(chi)(s); }

MollifierSpec::MollifierSpec(u64 X_, double Y_) : X(X_), Y(Y_) {
  if (X < 1) throw InvalidInput("mollifier: X must be >= 1");
  if (!(Y >= 2.0)) throw InvalidInput("mollifier: Y must be >= 2");
  const double ly = std::log(Y);
  const double upto = std::floor(Y * ly * ly);
  if (upto > 1e8) throw BudgetExceeded("mollifier: Y log^2 Y exceeds 1e8 coefficients");
  coefficients = mollifier_coefficients(X, static_cast<u64>(upto));
}

}  // namespace lvlab
