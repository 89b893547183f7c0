#include "lvlab/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lvlab/errors.hpp"

namespace lvlab {

namespace {

int valuation(u64 n, u64 p) {
  int v = 0;
  while (n && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

u64 smallest_primitive_root(u64 p, int e, u64 pe) {
  u64 ord = pe / p * (p - 1);
  auto ps = factorize(ord);
  for (u64 g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& r : ps) {
      if (powmod(g, ord / r.p, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  (void)e;
  return 1;  // pe == 2
}

std::complex<double> root_of_unity(u64 num, u64 den) {
  if (num == 0) return {1.0, 0.0};
  if (2 * num == den) return {-1.0, 0.0};
  if (4 * num == den) return {0.0, 1.0};
  if (4 * num == 3 * den) return {0.0, -1.0};
  // reduce the fraction before converting so the angle is exact up to one rounding
  u64 g = std::gcd(num, den);
  double x = static_cast<double>(num / g) / static_cast<double>(den / g);
  double th = 2.0 * std::numbers::pi * x;
  return {std::cos(th), std::sin(th)};
}

}  // namespace

Modulus::Modulus(u64 q, u64 cap) : q_(q) {
  if (q == 0) throw InvalidInput("invalid modulus: q must be >= 1");
  if (q > cap)
    throw BudgetExceeded("modulus " + std::to_string(q) + " exceeds construction cap " + std::to_string(cap),
                         static_cast<std::size_t>(q) * sizeof(std::int32_t));
  factors_ = factorize(q);
  phi_ = euler_phi(q);
  for (const auto& f : factors_) {
    Component c{f.p, f.e, ipow(f.p, f.e), orders_.size(), 0, {}};
    c.table.assign(c.pe, -1);
    std::vector<u64> local_gens, local_orders;
    if (f.p == 2) {
      if (f.e == 1) {
        c.table[1] = 0;
      } else if (f.e == 2) {
        local_gens = {3};
        local_orders = {2};
        c.table[1] = 0;
        c.table[3] = 1;
      } else {
        u64 half = c.pe / 4;
        local_gens = {c.pe - 1, 5};
        local_orders = {2, half};
        u64 x = 1;
        for (u64 b = 0; b < half; ++b) {
          c.table[x] = static_cast<std::int32_t>(b);                       // a = 0
          c.table[c.pe - x] = static_cast<std::int32_t>(half + b);         // a = 1
          x = x * 5 % c.pe;
        }
      }
    } else {
      u64 g = smallest_primitive_root(f.p, f.e, c.pe);
      u64 ord = c.pe / f.p * (f.p - 1);
      local_gens = {g};
      local_orders = {ord};
      u64 x = 1;
      for (u64 k = 0; k < ord; ++k) {
        c.table[x] = static_cast<std::int32_t>(k);
        x = x * g % c.pe;
      }
    }
    c.count = local_gens.size();
    u64 rest = q / c.pe;
    for (std::size_t j = 0; j < local_gens.size(); ++j) {
      // CRT lift: n == g mod pe, n == 1 mod rest
      u64 lifted = local_gens[j];
      if (rest > 1) {
        u64 inv = static_cast<u64>(mod_inverse(static_cast<i64>(rest % c.pe), static_cast<i64>(c.pe)));
        // n = 1 + rest * t, t = (g - 1) * rest^{-1} mod pe
        u64 t = mulmod((local_gens[j] + c.pe - 1) % c.pe, inv, c.pe);
        lifted = (1 + rest * t) % q;
      }
      generators_.push_back(lifted);
      local_generators_.push_back(local_gens[j]);
      orders_.push_back(local_orders[j]);
      lcm_ = std::lcm(lcm_, local_orders[j]);
    }
    comps_.push_back(std::move(c));
  }
}

bool Modulus::coprime(i64 n) const { return gcd_u(static_cast<u64>(mod_floor(n, static_cast<i64>(q_))), q_) == 1; }

bool Modulus::dlog_into(u64 r, u64* out) const {
  for (const auto& c : comps_) {
    std::int32_t v = c.table[r % c.pe];
    if (v < 0) return false;
    if (c.count == 1) {
      out[c.first] = static_cast<u64>(v);
    } else if (c.count == 2) {
      u64 half = orders_[c.first + 1];
      out[c.first] = static_cast<u64>(v) / half;
      out[c.first + 1] = static_cast<u64>(v) % half;
    }
  }
  return true;
}

std::vector<u64> Modulus::dlog(i64 n) const {
  std::vector<u64> out(rank(), 0);
  u64 r = static_cast<u64>(mod_floor(n, static_cast<i64>(q_)));
  if (!dlog_into(r, out.data()))
    throw InvalidInput("dlog: " + std::to_string(n) + " is not a unit mod " + std::to_string(q_));
  return out;
}

u64 Modulus::index_of(const std::vector<u64>& exponents) const {
  u64 idx = 0, radix = 1;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    idx += (exponents[j] % orders_[j]) * radix;
    radix *= orders_[j];
  }
  return idx;
}

std::vector<u64> Modulus::exponents_of(u64 index) const {
  if (index >= phi_) throw InvalidInput("character index " + std::to_string(index) + " out of range");
  std::vector<u64> e(rank());
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    e[j] = index % orders_[j];
    index /= orders_[j];
  }
  return e;
}

u64 Modulus::conductor_of(const std::vector<u64>& exps) const {
  u64 f = 1;
  for (const auto& c : comps_) {
    int fe = 0;
    if (c.p == 2) {
      if (c.e == 2) {
        fe = exps[c.first] ? 2 : 0;
      } else if (c.e >= 3) {
        u64 a = exps[c.first], b = exps[c.first + 1];
        if (b == 0)
          fe = a ? 2 : 0;
        else
          fe = std::max(3, c.e - valuation(b, 2));
      }
    } else {
      u64 k = exps[c.first];
      if (k != 0) fe = std::max(1, c.e - std::min(valuation(k, c.p), c.e - 1));
    }
    f *= ipow(c.p, fe);
  }
  return f;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const Modulus> mod, std::vector<u64> exponents)
    : mod_(std::move(mod)), exps_(std::move(exponents)) {
  const auto& ord = mod_->orders();
  if (exps_.size() != ord.size()) throw InvalidInput("exponent vector length does not match the unit group rank");
  weights_.resize(ord.size());
  for (std::size_t j = 0; j < ord.size(); ++j) {
    exps_[j] %= ord[j];
    weights_[j] = mod_->angle_denominator() / ord[j];
  }
  index_ = mod_->index_of(exps_);
  conductor_ = mod_->conductor_of(exps_);
  parity_ = (mod_->q() <= 2) ? 1 : ((*angle(-1) == 0) ? 1 : -1);
}

DirichletCharacter DirichletCharacter::from_index(std::shared_ptr<const Modulus> mod, u64 index) {
  auto e = mod->exponents_of(index);
  return DirichletCharacter(std::move(mod), std::move(e));
}

bool DirichletCharacter::is_real() const {
  const auto& ord = mod_->orders();
  for (std::size_t j = 0; j < ord.size(); ++j)
    if ((2 * exps_[j]) % ord[j] != 0) return false;
  return true;
}

std::optional<u64> DirichletCharacter::angle(i64 n) const {
  const u64 q = mod_->q();
  u64 r = static_cast<u64>(mod_floor(n, static_cast<i64>(q)));
  if (q == 1) return 0;
  u64 buf[64];
  if (!mod_->dlog_into(r, buf)) return std::nullopt;
  const u64 L = mod_->angle_denominator();
  unsigned __int128 acc = 0;
  for (std::size_t j = 0; j < exps_.size(); ++j)
    acc += static_cast<unsigned __int128>(exps_[j]) * buf[j] % L * weights_[j];
  return static_cast<u64>(acc % L);
}

std::complex<double> DirichletCharacter::operator()(i64 n) const {
  auto a = angle(n);
  if (!a) return {0.0, 0.0};
  return root_of_unity(*a, mod_->angle_denominator());
}

std::vector<std::complex<double>> DirichletCharacter::value_table() const {
  const u64 q = mod_->q();
  std::vector<std::complex<double>> t(q);
  for (u64 r = 0; r < q; ++r) t[r] = (*this)(static_cast<i64>(r));
  return t;
}

CharacterGroup build_group(u64 q, u64 enumeration_cap) {
  auto mod = std::make_shared<const Modulus>(q);
  if (q > enumeration_cap)
    throw BudgetExceeded("full group enumeration for q=" + std::to_string(q) + " exceeds cap " +
                             std::to_string(enumeration_cap),
                         static_cast<std::size_t>(mod->phi()) * mod->rank() * sizeof(u64));
  CharacterGroup g{mod, {}};
  g.characters.reserve(mod->phi());
  for (u64 i = 0; i < mod->phi(); ++i) g.characters.push_back(DirichletCharacter::from_index(mod, i));
  return g;
}

std::complex<double> eval_char(const DirichletCharacter& chi, i64 n) { return chi(n); }

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (a.q() != b.q()) throw InvalidInput("multiply: characters have different moduli");
  std::vector<u64> e(a.exponents().size());
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = a.exponents()[j] + b.exponents()[j];
  return DirichletCharacter(a.modulus_ptr(), std::move(e));
}

DirichletCharacter conjugate(const DirichletCharacter& a) {
  const auto& ord = a.modulus().orders();
  std::vector<u64> e(ord.size());
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = (ord[j] - a.exponents()[j]) % ord[j];
  return DirichletCharacter(a.modulus_ptr(), std::move(e));
}

i64 ramanujan_sum(u64 q, i64 m) {
  if (q == 0) throw InvalidInput("ramanujan_sum: q must be >= 1");
  u64 g = gcd_u(static_cast<u64>(m < 0 ? -m : m), q);
  if (g == 0) g = q;
  u64 r = q / g;
  return static_cast<i64>(mobius(r)) * static_cast<i64>(euler_phi(q) / euler_phi(r));
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  const u64 q = chi.q();
  std::complex<double> s{0.0, 0.0};
  for (u64 a = 1; a <= q; ++a) {
    auto th = chi.angle(static_cast<i64>(a));
    if (!th) continue;
    // combine the two angles exactly over lcm(L, q)
    u64 L = chi.modulus().angle_denominator();
    u64 D = std::lcm(L, q);
    unsigned __int128 num = static_cast<unsigned __int128>(*th) * (D / L) + static_cast<unsigned __int128>(a % q) * (D / q);
    s += root_of_unity(static_cast<u64>(num % D), D);
  }
  return s;
}

PrimitiveInducing primitive_character(const DirichletCharacter& chi) {
  const u64 q = chi.q();
  const u64 qs = chi.conductor();
  auto mod_s = std::make_shared<const Modulus>(qs);
  const auto& gens = mod_s->generators();
  const auto& ords = mod_s->orders();
  const u64 L = chi.modulus().angle_denominator();
  std::vector<u64> e(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    u64 n = gens[j];
    while (gcd_u(n, q) != 1) n += qs;
    u64 num = *chi.angle(static_cast<i64>(n));
    unsigned __int128 scaled = static_cast<unsigned __int128>(num) * ords[j];
    if (scaled % L != 0) throw InvariantFailure("primitive_character: lifted generator gave a non-integral exponent");
    e[j] = static_cast<u64>(scaled / L) % ords[j];
  }
  DirichletCharacter prim(mod_s, std::move(e));
  if (!prim.is_primitive()) throw InvariantFailure("primitive_character: induced character is not primitive");
  return {qs, std::move(prim)};
}

}  // namespace lvlab
