#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace weightforge {

/// An exact element of a cyclotomic field. The representation is the tensor
/// decomposition Q(zeta_n) = (x)_q Q(zeta_{q^e}) over the prime powers of the
/// conductor: a term is a product of prime-power roots with exponents held in
/// the integral power basis [0, phi(q^e)) per prime, and a rational
/// coefficient. Levels are always minimal and zero terms dropped, so two
/// values are equal iff their representations are identical.
class Cyclotomic {
 public:
  struct PrimePower {
    uint64_t prime;
    uint32_t exp;  // the level: this factor is Q(zeta_{prime^exp})
    auto operator<=>(const PrimePower&) const = default;
  };
  using ExpVec = std::vector<uint32_t>;  // aligned with the support

  Cyclotomic() = default;  // zero
  Cyclotomic(const mpq_class& r);
  Cyclotomic(long v) : Cyclotomic(mpq_class(v)) {}

  static Cyclotomic root_of_unity(uint64_t n, uint64_t k);  // zeta_n^k
  /// Value from dense coefficients on zeta_n^0 .. zeta_n^{n-1}.
  static Cyclotomic from_power_basis(uint64_t n, const std::vector<mpq_class>& coeffs);

  bool is_zero() const { return terms_.empty(); }
  /// Smallest n with this value in Q(zeta_n); 1 for rationals. Odd values
  /// never report a factor 2^1 (zeta_2 = -1 is rational).
  uint64_t conductor() const;
  std::optional<mpq_class> rational() const;
  bool is_integral() const;  // all coefficients in Z

  Cyclotomic operator+(const Cyclotomic&) const;
  Cyclotomic operator-(const Cyclotomic&) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic&) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic operator*(const mpq_class& s) const;
  Cyclotomic operator/(const mpq_class& s) const;

  /// The Galois map zeta_n -> zeta_n^k; requires gcd(k, conductor) = 1.
  Cyclotomic galois(uint64_t k) const;
  Cyclotomic conjugate() const;

  /// Dense coefficients of the canonical form on zeta_n^0 .. zeta_n^{n-1};
  /// throws DomainError unless conductor | n.
  std::vector<mpq_class> power_basis(uint64_t n) const;

  bool operator==(const Cyclotomic&) const = default;
  /// Deterministic total order; used for canonical row sorting only.
  bool operator<(const Cyclotomic&) const;

  const std::vector<PrimePower>& support() const { return support_; }
  const std::map<ExpVec, mpq_class>& terms() const { return terms_; }

 private:
  void add_term(const ExpVec& e, const mpq_class& c);  // reduces into the basis
  void canonicalize();
  static Cyclotomic aligned(const Cyclotomic& x, const std::vector<PrimePower>& sup);

  std::vector<PrimePower> support_;      // sorted by prime
  std::map<ExpVec, mpq_class> terms_;    // exponent tuple -> nonzero coefficient
};

uint64_t phi_prime_power(uint64_t p, uint32_t e);

}  // namespace weightforge
