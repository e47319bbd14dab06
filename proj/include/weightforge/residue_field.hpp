#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "weightforge/cyclotomic.hpp"

namespace weightforge {

/// The residue field F_{p^m} of the p-modular system, presented as
/// F_p[x]/(f) with f the first monic irreducible of degree m in the
/// deterministic coefficient scan. m is the multiplicative order of p mod n'
/// (n' the p'-part of the supported conductor), and the reduction map sends
/// p-power-order roots of unity to 1 and zeta_{n'} to a fixed element of
/// exact order n'.
class ResidueField {
 public:
  using Elem = std::vector<uint64_t>;  // dense coefficients < p, size m

  ResidueField(uint64_t p, uint64_t n_prime);

  uint64_t p() const { return p_; }
  uint32_t degree() const { return m_; }
  uint64_t modulus_order() const { return n_prime_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  const Elem& zeta() const { return zeta_; }

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  Elem from_scalar(uint64_t v) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, const mpz_class& e) const;
  bool is_zero(const Elem& a) const;

  /// Reduction of an exact cyclotomic value whose p'-conductor divides n'.
  /// Throws ValidationError if a coefficient denominator is divisible by p.
  Elem reduce(const Cyclotomic& x) const;

 private:
  Elem x_power(uint64_t k) const;  // x^k mod f for small k
  uint64_t p_;
  uint64_t n_prime_;
  uint32_t m_;
  std::vector<uint64_t> modulus_;  // coefficients of monic f, degree m (size m, leading 1 implied)
  Elem zeta_;
  mutable std::map<std::pair<uint64_t, uint32_t>, std::vector<Elem>> zeta_cache_;
};

}  // namespace weightforge
