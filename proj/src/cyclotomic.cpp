#include "weightforge/cyclotomic.hpp"

#include <algorithm>
#include <numeric>

#include "weightforge/errors.hpp"

namespace weightforge {

uint64_t phi_prime_power(uint64_t p, uint32_t e) {
  uint64_t v = p - 1;
  for (uint32_t i = 1; i < e; ++i) v *= p;
  return v;
}

namespace {

uint64_t pow_u64(uint64_t p, uint32_t e) {
  uint64_t v = 1;
  while (e--) v *= p;
  return v;
}

std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, uint32_t>> f;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    uint32_t e = 0;
    while (n % p == 0) { n /= p; ++e; }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

}  // namespace

Cyclotomic::Cyclotomic(const mpq_class& r) {
  mpq_class c = r;
  c.canonicalize();  // mpq_class(a, b) arrives unreduced
  if (c != 0) terms_.emplace(ExpVec{}, std::move(c));
}

// Reduce exponent `a` (taken mod q^e) on one prime into the basis range
// [0, phi(q^e)), producing the expansion terms recursively across primes.
void Cyclotomic::add_term(const ExpVec& e, const mpq_class& c) {
  if (c == 0) return;
  for (size_t i = 0; i < support_.size(); ++i) {
    const uint64_t q = support_[i].prime;
    const uint64_t qe = pow_u64(q, support_[i].exp);
    const uint64_t phi = phi_prime_power(q, support_[i].exp);
    uint64_t a = e[i] % qe;
    if (a >= phi) {
      // zeta^phi = -(sum of zeta^{t*q^{e-1}} for t in [0, q-2]), shifted by s
      uint64_t s = a - phi;
      uint64_t step = qe / q;
      ExpVec e2 = e;
      for (uint64_t t = 0; t + 1 < q; ++t) {
        e2[i] = static_cast<uint32_t>(s + t * step);
        add_term(e2, -c);
      }
      return;
    }
    if (a != e[i]) {
      ExpVec e2 = e;
      e2[i] = static_cast<uint32_t>(a);
      add_term(e2, c);
      return;
    }
  }
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Cyclotomic::canonicalize() {
  // lower each prime's level while every exponent is divisible by the prime,
  // then drop primes whose exponents are all zero
  for (size_t i = 0; i < support_.size();) {
    const uint64_t q = support_[i].prime;
    bool lowered = true;
    while (lowered && support_[i].exp > 0) {
      for (const auto& [e, c] : terms_)
        if (e[i] % q != 0) { lowered = false; break; }
      if (!lowered) break;
      if (support_[i].exp == 1) {
        bool all_zero = true;
        for (const auto& [e, c] : terms_)
          if (e[i] != 0) { all_zero = false; break; }
        if (!all_zero) break;
        // exponent column identically zero at level 1: drop the prime
        std::map<ExpVec, mpq_class> nt;
        for (const auto& [e, c] : terms_) {
          ExpVec e2 = e;
          e2.erase(e2.begin() + static_cast<long>(i));
          nt.emplace(std::move(e2), c);
        }
        terms_ = std::move(nt);
        support_.erase(support_.begin() + static_cast<long>(i));
        goto next_prime;
      }
      {
        std::map<ExpVec, mpq_class> nt;
        for (const auto& [e, c] : terms_) {
          ExpVec e2 = e;
          e2[i] /= static_cast<uint32_t>(q);
          nt.emplace(std::move(e2), c);
        }
        terms_ = std::move(nt);
        --support_[i].exp;
      }
    }
    ++i;
  next_prime:;
  }
  if (terms_.empty()) support_.clear();
}

Cyclotomic Cyclotomic::aligned(const Cyclotomic& x, const std::vector<PrimePower>& sup) {
  Cyclotomic r;
  r.support_ = sup;
  for (const auto& [e, c] : x.terms_) {
    ExpVec e2(sup.size(), 0);
    for (size_t i = 0; i < x.support_.size(); ++i) {
      size_t j = 0;
      while (sup[j].prime != x.support_[i].prime) ++j;
      // lift zeta_{q^a} = zeta_{q^b}^{q^{b-a}} into the common level b
      e2[j] = e[i] * static_cast<uint32_t>(pow_u64(sup[j].prime, sup[j].exp - x.support_[i].exp));
    }
    r.add_term(e2, c);
  }
  return r;
}

namespace {

std::vector<Cyclotomic::PrimePower> merge_support(const std::vector<Cyclotomic::PrimePower>& a,
                                                  const std::vector<Cyclotomic::PrimePower>& b) {
  std::vector<Cyclotomic::PrimePower> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) out.push_back(a[i++]);
    else if (i == a.size() || b[j].prime < a[i].prime) out.push_back(b[j++]);
    else {
      out.push_back({a[i].prime, std::max(a[i].exp, b[j].exp)});
      ++i; ++j;
    }
  }
  return out;
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  auto sup = merge_support(support_, o.support_);
  Cyclotomic a = aligned(*this, sup);
  for (const auto& [e, c] : aligned(o, sup).terms_) a.add_term(e, c);
  a.canonicalize();
  return a;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (is_zero() || o.is_zero()) return {};
  auto sup = merge_support(support_, o.support_);
  Cyclotomic a = aligned(*this, sup);
  Cyclotomic b = aligned(o, sup);
  Cyclotomic r;
  r.support_ = sup;
  ExpVec e(sup.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < sup.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::operator*(const mpq_class& s) const {
  mpq_class sc = s;
  sc.canonicalize();
  if (sc == 0) return {};
  Cyclotomic r = *this;
  for (auto& [e, c] : r.terms_) c *= sc;
  return r;
}

Cyclotomic Cyclotomic::operator/(const mpq_class& s) const {
  mpq_class sc = s;
  sc.canonicalize();
  if (sc == 0) throw DomainError("cyclotomic division by zero scalar");
  return *this * mpq_class(1 / sc);
}

Cyclotomic Cyclotomic::root_of_unity(uint64_t n, uint64_t k) {
  if (n == 0) throw DomainError("root_of_unity: n must be positive");
  k %= n;
  Cyclotomic r;
  auto f = factorize(n);
  ExpVec e;
  for (auto [p, exp] : f) {
    r.support_.push_back({p, exp});
    uint64_t qe = pow_u64(p, exp);
    uint64_t rest = n / qe;
    // CRT: zeta_n^k = prod_q zeta_{q^e}^{k * (n/q^e)^{-1} mod q^e}
    uint64_t inv = 1, base = rest % qe;
    {
      // modular inverse by extended gcd
      int64_t t = 0, newt = 1;
      int64_t rr = static_cast<int64_t>(qe), newr = static_cast<int64_t>(base);
      while (newr != 0) {
        int64_t qq = rr / newr;
        std::swap(t -= qq * newt, newt);
        std::swap(rr -= qq * newr, newr);
      }
      inv = static_cast<uint64_t>((t % static_cast<int64_t>(qe) + static_cast<int64_t>(qe)) %
                                  static_cast<int64_t>(qe));
    }
    e.push_back(static_cast<uint32_t>(((k % qe) * (inv % qe)) % qe));
  }
  r.add_term(e, 1);
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::from_power_basis(uint64_t n, const std::vector<mpq_class>& coeffs) {
  Cyclotomic acc;
  for (uint64_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) acc += root_of_unity(n, i) * coeffs[i];
  return acc;
}

uint64_t Cyclotomic::conductor() const {
  uint64_t n = 1;
  for (const auto& pp : support_) n *= pow_u64(pp.prime, pp.exp);
  return n;
}

std::optional<mpq_class> Cyclotomic::rational() const {
  if (terms_.empty()) return mpq_class(0);
  if (support_.empty()) return terms_.begin()->second;
  return std::nullopt;
}

bool Cyclotomic::is_integral() const {
  for (const auto& [e, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

Cyclotomic Cyclotomic::galois(uint64_t k) const {
  uint64_t n = conductor();
  if (std::gcd(k % n, n) != 1)
    throw DomainError("galois: exponent " + std::to_string(k) + " is not coprime to the conductor " +
                      std::to_string(n));
  Cyclotomic r;
  r.support_ = support_;
  for (const auto& [e, c] : terms_) {
    ExpVec e2(e.size());
    for (size_t i = 0; i < support_.size(); ++i) {
      uint64_t qe = pow_u64(support_[i].prime, support_[i].exp);
      e2[i] = static_cast<uint32_t>((static_cast<uint64_t>(e[i]) * (k % qe)) % qe);
    }
    r.add_term(e2, c);
  }
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::conjugate() const {
  uint64_t n = conductor();
  if (n == 1) return *this;
  return galois(n - 1);
}

std::vector<mpq_class> Cyclotomic::power_basis(uint64_t n) const {
  uint64_t cond = conductor();
  if (cond == 0 || n % cond != 0)
    throw DomainError("power_basis: conductor " + std::to_string(cond) + " does not divide " +
                      std::to_string(n));
  std::vector<mpq_class> out(n, mpq_class(0));
  for (const auto& [e, c] : terms_) {
    uint64_t idx = 0;
    for (size_t i = 0; i < support_.size(); ++i) {
      uint64_t qe = pow_u64(support_[i].prime, support_[i].exp);
      idx = (idx + static_cast<uint64_t>(e[i]) * (n / qe)) % n;
    }
    out[idx] += c;
  }
  return out;
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
  if (support_ != o.support_) return support_ < o.support_;
  auto a = terms_.begin(), b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

}  // namespace weightforge
