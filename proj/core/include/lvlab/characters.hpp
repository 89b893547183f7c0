#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lvlab/numtheory.hpp"

namespace lvlab {

inline constexpr u64 kModulusCap = 1'000'000;
inline constexpr u64 kEnumerationCap = 10'000;

// (Z/qZ)* as a product of cyclic factors with dense discrete-log tables.
class Modulus {
 public:
  explicit Modulus(u64 q, u64 cap = kModulusCap);

  u64 q() const { return q_; }
  u64 phi() const { return phi_; }
  const std::vector<PrimePower>& factorization() const { return factors_; }

  // One entry per cyclic factor, ordered by prime; for 2^e (e>=3) -1 precedes 5.
  std::size_t rank() const { return orders_.size(); }
  const std::vector<u64>& orders() const { return orders_; }
  // Generators lifted to residues mod q (CRT with 1 on the other prime powers).
  const std::vector<u64>& generators() const { return generators_; }
  // Local generators, i.e. residues mod the owning prime power.
  const std::vector<u64>& local_generators() const { return local_generators_; }
  // lcm of the generator orders; character angles are numerators over this.
  u64 angle_denominator() const { return lcm_; }

  bool coprime(i64 n) const;
  // Exponent vector of n over the generators; throws InvalidInput if gcd(n,q) > 1.
  std::vector<u64> dlog(i64 n) const;
  // Writes the exponent vector of residue r (0 <= r < q); returns false if not a unit.
  bool dlog_into(u64 r, u64* out) const;

  u64 conductor_of(const std::vector<u64>& exponents) const;
  u64 index_of(const std::vector<u64>& exponents) const;
  std::vector<u64> exponents_of(u64 index) const;

 private:
  struct Component {
    u64 p;
    int e;
    u64 pe;
    std::size_t first;   // position of its first generator
    std::size_t count;   // 0, 1 or 2 generators
    std::vector<std::int32_t> table;  // packed local exponent, -1 for non-units
  };

  u64 q_;
  u64 phi_;
  u64 lcm_ = 1;
  std::vector<PrimePower> factors_;
  std::vector<Component> comps_;
  std::vector<u64> orders_;
  std::vector<u64> generators_;
  std::vector<u64> local_generators_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const Modulus> mod, std::vector<u64> exponents);
  static DirichletCharacter from_index(std::shared_ptr<const Modulus> mod, u64 index);

  const Modulus& modulus() const { return *mod_; }
  const std::shared_ptr<const Modulus>& modulus_ptr() const { return mod_; }
  u64 q() const { return mod_->q(); }
  u64 index() const { return index_; }
  const std::vector<u64>& exponents() const { return exps_; }
  u64 conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == mod_->q(); }
  bool is_principal() const { return index_ == 0; }
  // True when all values are real (order divides 2).
  bool is_real() const;
  int parity() const { return parity_; }

  // Angle numerator over modulus().angle_denominator(); nullopt when gcd(n,q) > 1.
  std::optional<u64> angle(i64 n) const;
  std::complex<double> operator()(i64 n) const;
  // chi(0..q-1).
  std::vector<std::complex<double>> value_table() const;

 private:
  std::shared_ptr<const Modulus> mod_;
  std::vector<u64> exps_;
  std::vector<u64> weights_;  // exponent weight L / ord_j
  u64 index_ = 0;
  u64 conductor_ = 1;
  int parity_ = 1;
};

struct CharacterGroup {
  std::shared_ptr<const Modulus> modulus;
  std::vector<DirichletCharacter> characters;
};

CharacterGroup build_group(u64 q, u64 enumeration_cap = kEnumerationCap);

std::complex<double> eval_char(const DirichletCharacter& chi, i64 n);
DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);
DirichletCharacter conjugate(const DirichletCharacter& a);

// C_q(m) by mu(q/g) phi(q) / phi(q/g), g = gcd(m, q).
i64 ramanujan_sum(u64 q, i64 m);

std::complex<double> gauss_sum(const DirichletCharacter& chi);

struct PrimitiveInducing {
  u64 conductor;
  DirichletCharacter primitive;
};
PrimitiveInducing primitive_character(const DirichletCharacter& chi);

}  // namespace lvlab
