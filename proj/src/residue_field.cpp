#include "weightforge/residue_field.hpp"

#include <numeric>

#include "weightforge/errors.hpp"

namespace weightforge {

namespace {

uint64_t mod_order(uint64_t p, uint64_t n) {
  // multiplicative order of p modulo n; requires gcd(p, n) = 1
  if (n == 1) return 1;
  uint64_t v = p % n, ord = 1;
  while (v != 1) {
    v = (v * p) % n;
    if (++ord > n) throw InternalError("mod_order: p is not invertible modulo n");
  }
  return ord;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

ResidueField::ResidueField(uint64_t p, uint64_t n_prime) : p_(p), n_prime_(n_prime) {
  if (p < 2 || n_prime == 0 || n_prime % p == 0)
    throw DomainError("residue field: p must be a prime not dividing the modulus order");
  m_ = static_cast<uint32_t>(mod_order(p, n_prime));

  // first monic irreducible of degree m in the base-p coefficient counter
  auto poly_mul = [&](const Elem& a, const Elem& b, const std::vector<uint64_t>& f) {
    std::vector<uint64_t> t(2 * m_, 0);
    for (uint32_t i = 0; i < m_; ++i) {
      if (!a[i]) continue;
      for (uint32_t j = 0; j < m_; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p_;
    }
    for (uint32_t i = 2 * m_; i-- > m_;) {
      uint64_t c = t[i];
      if (!c) continue;
      t[i] = 0;
      for (uint32_t j = 0; j < m_; ++j) t[i - m_ + j] = (t[i - m_ + j] + (p_ - f[j] % p_) * c) % p_;
    }
    return Elem(t.begin(), t.begin() + m_);
  };
  auto frobenius_power = [&](Elem a, uint32_t times, const std::vector<uint64_t>& f) {
    // a^(p^times) mod f
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p_, times);
    Elem acc(m_, 0);
    acc[0] = 1;
    Elem base = std::move(a);
    mpz_class k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) acc = poly_mul(acc, base, f);
      base = poly_mul(base, base, f);
      k >>= 1;
    }
    return acc;
  };
  auto poly_gcd_is_one = [&](Elem a, std::vector<uint64_t> b_full) {
    // gcd of a (degree < m) with... reduced both as generic polynomials mod p
    auto norm = [&](std::vector<uint64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    std::vector<uint64_t> x(a.begin(), a.end()), y = std::move(b_full);
    norm(x);
    norm(y);
    while (!y.empty()) {
      // x mod y
      while (x.size() >= y.size() && !x.empty()) {
        uint64_t lead_inv = 1, ly = y.back();
        // inverse of ly mod p
        uint64_t e = p_ - 2, base = ly % p_, acc = 1;
        while (e) {
          if (e & 1) acc = acc * base % p_;
          base = base * base % p_;
          e >>= 1;
        }
        lead_inv = acc;
        uint64_t c = x.back() % p_ * lead_inv % p_;
        size_t shift = x.size() - y.size();
        for (size_t i = 0; i < y.size(); ++i)
          x[shift + i] = (x[shift + i] + (p_ - c * y[i] % p_)) % p_;
        norm(x);
      }
      std::swap(x, y);
    }
    return x.size() == 1;
  };

  if (m_ == 1) {
    modulus_ = {0};  // f = x
  } else {
    std::vector<uint64_t> qs = prime_divisors(m_);
    mpz_class counter = 0;
    while (true) {
      // f = x^m + sum c_i x^i with (c_{m-1}..c_0) the base-p digits of counter
      std::vector<uint64_t> f(m_, 0);
      mpz_class c = counter;
      for (uint32_t i = 0; i < m_ && c > 0; ++i) {
        f[i] = mpz_class(c % p_).get_ui();
        c /= p_;
      }
      ++counter;
      if (f[0] == 0) continue;  // divisible by x
      // irreducible iff x^(p^m) = x mod f and gcd(x^(p^(m/q)) - x, f) = 1
      Elem x(m_, 0);
      x[1 % m_] = 1;
      Elem xm = frobenius_power(x, m_, f);
      if (!(xm == x)) continue;
      bool ok = true;
      for (uint64_t q : qs) {
        Elem xq = frobenius_power(x, m_ / static_cast<uint32_t>(q), f);
        // gcd(xq - x, f) must be 1
        Elem diff(m_, 0);
        for (uint32_t i = 0; i < m_; ++i) diff[i] = (xq[i] + p_ - x[i]) % p_;
        std::vector<uint64_t> f_full(f.begin(), f.end());
        f_full.push_back(1);
        if (!poly_gcd_is_one(diff, f_full)) { ok = false; break; }
      }
      if (ok) {
        modulus_ = f;
        break;
      }
    }
  }

  // fixed order-n' element: first scan element gamma whose
  // (p^m - 1)/n' power has exact order n'
  mpz_class field_units;
  mpz_ui_pow_ui(field_units.get_mpz_t(), p_, m_);
  field_units -= 1;
  if (!mpz_divisible_p(field_units.get_mpz_t(), mpz_class(n_prime_).get_mpz_t()))
    throw InternalError("residue field: n' does not divide p^m - 1");
  mpz_class cofactor = field_units / static_cast<unsigned long>(n_prime_);
  std::vector<uint64_t> qs = prime_divisors(n_prime_);
  mpz_class counter = 1;
  while (true) {
    Elem gamma(m_, 0);
    mpz_class c = counter;
    for (uint32_t i = 0; i < m_ && c > 0; ++i) {
      gamma[i] = mpz_class(c % p_).get_ui();
      c /= p_;
    }
    ++counter;
    Elem h = pow(gamma, cofactor);
    bool ok = !is_zero(h);
    for (uint64_t q : qs)
      if (ok) {
        Elem t = pow(h, mpz_class(static_cast<unsigned long>(n_prime_ / q)));
        if (t == one()) ok = false;
      }
    if (ok) {
      if (!(pow(h, mpz_class(static_cast<unsigned long>(n_prime_))) == one()))
        throw InternalError("residue field: fixed root has wrong order");
      zeta_ = h;
      return;
    }
  }
}

ResidueField::Elem ResidueField::one() const {
  Elem e(m_, 0);
  e[0] = 1;
  return e;
}

ResidueField::Elem ResidueField::from_scalar(uint64_t v) const {
  Elem e(m_, 0);
  e[0] = v % p_;
  return e;
}

ResidueField::Elem ResidueField::add(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (uint32_t i = 0; i < m_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

ResidueField::Elem ResidueField::sub(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (uint32_t i = 0; i < m_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

ResidueField::Elem ResidueField::mul(const Elem& a, const Elem& b) const {
  std::vector<uint64_t> t(2 * m_, 0);
  for (uint32_t i = 0; i < m_; ++i) {
    if (!a[i]) continue;
    for (uint32_t j = 0; j < m_; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p_;
  }
  for (uint32_t i = 2 * m_; i-- > m_;) {
    uint64_t c = t[i];
    if (!c) continue;
    t[i] = 0;
    for (uint32_t j = 0; j < m_; ++j) t[i - m_ + j] = (t[i - m_ + j] + (p_ - modulus_[j]) * c) % p_;
  }
  return Elem(t.begin(), t.begin() + m_);
}

ResidueField::Elem ResidueField::pow(Elem a, const mpz_class& e) const {
  Elem acc = one();
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, a);
    a = mul(a, a);
    k >>= 1;
  }
  return acc;
}

bool ResidueField::is_zero(const Elem& a) const {
  for (uint64_t v : a)
    if (v) return false;
  return true;
}

ResidueField::Elem ResidueField::reduce(const Cyclotomic& x) const {
  Elem acc = zero();
  for (const auto& [e, c] : x.terms()) {
    // rational coefficient mod p
    mpz_class num = c.get_num(), den = c.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p_)))
      throw ValidationError("reduce_mod_p: coefficient denominator is divisible by p");
    mpz_class pz = static_cast<unsigned long>(p_);
    mpz_class deninv;
    if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()))
      throw ValidationError("reduce_mod_p: denominator not invertible mod p");
    mpz_class cm = ((num % pz) * deninv) % pz;
    if (cm < 0) cm += pz;
    Elem term = from_scalar(cm.get_ui());
    // root part: p-power factors map to 1, q^e factors to zeta^(n'/q^e * j)
    for (size_t i = 0; i < x.support().size(); ++i) {
      uint64_t q = x.support()[i].prime;
      if (q == p_) continue;
      uint64_t qe = 1;
      for (uint32_t t = 0; t < x.support()[i].exp; ++t) qe *= q;
      if (n_prime_ % qe != 0)
        throw DomainError("reduce_mod_p: value conductor does not divide the field modulus order");
      uint64_t j = e[i];
      if (!j) continue;
      auto key = std::make_pair(q, x.support()[i].exp);
      auto& cache = zeta_cache_[key];
      if (cache.empty()) {
        Elem root = pow(zeta_, mpz_class(static_cast<unsigned long>(n_prime_ / qe)));
        cache.push_back(one());
        for (uint64_t t = 1; t < qe; ++t) cache.push_back(mul(cache.back(), root));
      }
      term = mul(term, cache[j]);
    }
    acc = add(acc, term);
  }
  return acc;
}

}  // namespace weightforge
