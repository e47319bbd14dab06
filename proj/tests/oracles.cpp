#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace wftest {

using weightforge::PermHash;

std::vector<Permutation> closure_elements(uint32_t degree, const std::vector<Permutation>& gens,
                                          size_t cap) {
  std::unordered_set<Permutation, PermHash> seen;
  std::deque<Permutation> q;
  std::vector<Permutation> out;
  Permutation id(degree);
  seen.insert(id);
  out.push_back(id);
  q.push_back(id);
  while (!q.empty()) {
    Permutation x = q.front();
    q.pop_front();
    for (const Permutation& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y).second) {
        if (out.size() >= cap) throw std::runtime_error("closure oracle cap exceeded");
        out.push_back(y);
        q.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<uint64_t, uint64_t>> brute_classes(
    const std::vector<Permutation>& elements) {
  std::unordered_set<Permutation, PermHash> remaining(elements.begin(), elements.end());
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (const Permutation& g : elements) {
    if (!remaining.count(g)) continue;
    std::set<Permutation> cls;
    for (const Permutation& x : elements) cls.insert(g.conjugated_by(x));
    for (const Permutation& c : cls) remaining.erase(c);
    out.emplace_back(g.order(), cls.size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Cx = std::complex<double>;

std::vector<Cx> poly_roots(std::vector<Cx> coeffs) {
  // Durand-Kerner on a monic polynomial (coefficients low to high)
  while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-12) coeffs.pop_back();
  size_t deg = coeffs.size() - 1;
  for (auto& c : coeffs) c /= coeffs.back();
  std::vector<Cx> roots(deg);
  for (size_t i = 0; i < deg; ++i) roots[i] = std::pow(Cx(0.4, 0.9), static_cast<double>(i + 1));
  for (int iter = 0; iter < 500; ++iter) {
    double delta = 0;
    for (size_t i = 0; i < deg; ++i) {
      Cx num = 0;
      {
        Cx acc = 0;
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * roots[i] + coeffs[k];
        num = acc;
      }
      Cx den = 1;
      for (size_t j = 0; j < deg; ++j)
        if (j != i) den *= roots[i] - roots[j];
      Cx step = num / den;
      roots[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-13) break;
  }
  return roots;
}

}  // namespace

std::vector<uint64_t> numeric_character_degrees(const std::vector<Permutation>& elements) {
  const double n_elems = static_cast<double>(elements.size());
  // classes with explicit member lists
  std::vector<std::vector<Permutation>> classes;
  {
    std::unordered_set<Permutation, PermHash> remaining(elements.begin(), elements.end());
    for (const Permutation& g : elements) {
      if (!remaining.count(g)) continue;
      std::set<Permutation> cls;
      for (const Permutation& x : elements) cls.insert(g.conjugated_by(x));
      for (const Permutation& c : cls) remaining.erase(c);
      classes.emplace_back(cls.begin(), cls.end());
    }
  }
  const size_t n = classes.size();
  std::map<Permutation, uint32_t> class_of;
  for (uint32_t k = 0; k < n; ++k)
    for (const Permutation& e : classes[k]) class_of.emplace(e, k);

  // random real combination of the class matrices; its eigenvectors are the
  // common eigenvectors with probability 1
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(0.25, 1.0);
  std::vector<std::vector<Cx>> M(n, std::vector<Cx>(n, 0));
  for (uint32_t i = 0; i < n; ++i) {
    double w = unif(rng);
    // a_{ijk} = #{x in C_i : x^{-1} z_k in C_j}
    for (const Permutation& x : classes[i]) {
      Permutation xinv = x.inverse();
      for (uint32_t k = 0; k < n; ++k) {
        uint32_t j = class_of.at(xinv * classes[k].front());
        M[j][k] += w;
      }
    }
  }

  // characteristic polynomial coefficients via Leverrier-Faddeev
  std::vector<Cx> coeffs(n + 1, 0);
  {
    std::vector<std::vector<Cx>> Mk(n, std::vector<Cx>(n, 0)), acc = M;
    coeffs[n] = 1;
    std::vector<std::vector<Cx>> B = M;
    Cx c;
    for (size_t k = 1; k <= n; ++k) {
      Cx tr = 0;
      for (size_t i = 0; i < n; ++i) tr += B[i][i];
      c = -tr / static_cast<double>(k);
      coeffs[n - k] = c;
      if (k == n) break;
      for (size_t i = 0; i < n; ++i) B[i][i] += c;
      // B = M * B
      std::vector<std::vector<Cx>> nb(n, std::vector<Cx>(n, 0));
      for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < n; ++t) {
          if (M[i][t] == Cx(0)) continue;
          for (size_t j = 0; j < n; ++j) nb[i][j] += M[i][t] * B[t][j];
        }
      B = std::move(nb);
    }
  }
  std::vector<Cx> roots = poly_roots(coeffs);

  // eigenvector for each root by complex Gaussian elimination, then degree
  std::vector<uint64_t> degrees;
  for (const Cx& lam : roots) {
    std::vector<std::vector<Cx>> A = M;
    for (size_t i = 0; i < n; ++i) A[i][i] -= lam;
    // find a kernel vector
    std::vector<Cx> v(n, 0);
    {
      std::vector<size_t> pivots;
      size_t rank = 0;
      std::vector<int> pivot_of_col(n, -1);
      for (size_t col = 0; col < n && rank < n; ++col) {
        size_t best = rank;
        double mx = 0;
        for (size_t r = rank; r < n; ++r)
          if (std::abs(A[r][col]) > mx) { mx = std::abs(A[r][col]); best = r; }
        if (mx < 1e-7) continue;
        std::swap(A[rank], A[best]);
        Cx inv = 1.0 / A[rank][col];
        for (size_t j = 0; j < n; ++j) A[rank][j] *= inv;
        for (size_t r = 0; r < n; ++r) {
          if (r == rank) continue;
          Cx c = A[r][col];
          if (std::abs(c) < 1e-14) continue;
          for (size_t j = 0; j < n; ++j) A[r][j] -= c * A[rank][j];
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
      }
      // first free column yields the eigenvector
      size_t free_col = n;
      for (size_t col = 0; col < n; ++col)
        if (pivot_of_col[col] < 0) { free_col = col; break; }
      if (free_col == n) throw std::runtime_error("numeric oracle: no kernel vector");
      v[free_col] = 1;
      for (size_t col = 0; col < n; ++col)
        if (pivot_of_col[col] >= 0) v[col] = -A[pivot_of_col[col]][free_col];
    }
    if (std::abs(v[0]) < 1e-9) {
      // reindex so that the identity class coordinate is 1; identity class is
      // the class containing the identity permutation
      throw std::runtime_error("numeric oracle: eigenvector vanishes at the identity class");
    }
    // identity class index
    size_t id_class = 0;
    for (size_t k = 0; k < n; ++k)
      if (classes[k].front().is_identity() || classes[k].back().is_identity()) id_class = k;
    Cx scale = 1.0 / v[id_class];
    for (auto& x : v) x *= scale;
    // inverse-class pairing
    Cx s = 0;
    for (size_t k = 0; k < n; ++k) {
      Permutation invrep = classes[k].front().inverse();
      size_t kinv = class_of.at(invrep);
      s += v[k] * v[kinv] / static_cast<double>(classes[k].size());
    }
    double d2 = n_elems / s.real();
    uint64_t d = static_cast<uint64_t>(std::llround(std::sqrt(d2)));
    if (d == 0 || std::abs(std::sqrt(d2) - static_cast<double>(d)) > 1e-4)
      throw std::runtime_error("numeric oracle: non-integral character degree");
    degrees.push_back(d);
  }
  std::sort(degrees.begin(), degrees.end());
  uint64_t sq = 0;
  for (uint64_t d : degrees) sq += d * d;
  if (sq != elements.size())
    throw std::runtime_error("numeric oracle: sum of squared degrees mismatch");
  return degrees;
}

uint64_t numeric_dz_count(const std::vector<Permutation>& elements, uint64_t p) {
  uint64_t gval = 0, g = elements.size();
  while (g % p == 0) { g /= p; ++gval; }
  uint64_t count = 0;
  for (uint64_t d : numeric_character_degrees(elements)) {
    uint64_t dv = 0;
    while (d % p == 0) { d /= p; ++dv; }
    if (dv == gval) ++count;
  }
  return count;
}

BruteWeights brute_weights(uint32_t degree, const std::vector<Permutation>& gens, uint64_t p) {
  std::vector<Permutation> elements = closure_elements(degree, gens, 1000000);
  std::set<Permutation> element_set(elements.begin(), elements.end());

  using ElemSet = std::vector<Permutation>;  // sorted
  auto closure_set = [&](std::set<Permutation> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Permutation> cur(s.begin(), s.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (s.insert(a * b).second) grew = true;
    }
    return ElemSet(s.begin(), s.end());
  };

  // all p-subgroups, level by level
  std::set<ElemSet> all;
  ElemSet triv{Permutation(degree)};
  all.insert(triv);
  std::vector<ElemSet> frontier{triv};
  std::vector<Permutation> p_elements;
  for (const Permutation& e : elements) {
    uint64_t o = e.order(), q = 1;
    while (o % p == 0) { o /= p; q *= p; }
    if (o == 1 && !e.is_identity()) p_elements.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const ElemSet& H : frontier) {
      std::set<Permutation> hset(H.begin(), H.end());
      for (const Permutation& g : p_elements) {
        if (hset.count(g)) continue;
        if (!hset.count(g.power(p))) continue;
        bool normalizes = true;
        for (const Permutation& h : H)
          if (!hset.count(h.conjugated_by(g))) { normalizes = false; break; }
        if (!normalizes) continue;
        std::set<Permutation> seed = hset;
        seed.insert(g);
        ElemSet K = closure_set(std::move(seed));
        if (K.size() != H.size() * p) continue;
        if (all.insert(K).second) next.push_back(K);
      }
    }
    frontier = std::move(next);
  }

  // radicals: O_p(N) via intersecting the maximal p-subgroups of N
  auto is_radical = [&](const ElemSet& Q) {
    std::set<Permutation> qset(Q.begin(), Q.end());
    std::vector<Permutation> N;
    for (const Permutation& g : elements) {
      bool norm = true;
      for (const Permutation& q : Q)
        if (!qset.count(q.conjugated_by(g))) { norm = false; break; }
      if (norm) N.push_back(g);
    }
    std::set<Permutation> nset(N.begin(), N.end());
    // p-subgroups of N of maximal size
    size_t best = 0;
    std::vector<const ElemSet*> syl;
    for (const ElemSet& S : all) {
      bool inside = true;
      for (const Permutation& s : S)
        if (!nset.count(s)) { inside = false; break; }
      if (!inside) continue;
      if (S.size() > best) { best = S.size(); syl.clear(); }
      if (S.size() == best) syl.push_back(&S);
    }
    std::set<Permutation> core(syl.front()->begin(), syl.front()->end());
    for (const ElemSet* S : syl) {
      std::set<Permutation> sset(S->begin(), S->end());
      std::set<Permutation> inter;
      for (const Permutation& x : core)
        if (sset.count(x)) inter.insert(x);
      core = std::move(inter);
    }
    if (core.size() != Q.size()) return std::pair<bool, std::vector<Permutation>>{false, {}};
    for (const Permutation& q : Q)
      if (!core.count(q)) return std::pair<bool, std::vector<Permutation>>{false, {}};
    return std::pair<bool, std::vector<Permutation>>{true, N};
  };

  std::vector<std::pair<ElemSet, std::vector<Permutation>>> radicals;
  for (const ElemSet& Q : all) {
    auto [rad, N] = is_radical(Q);
    if (rad) radicals.emplace_back(Q, N);
  }

  // class the radicals under conjugation by all elements
  std::set<ElemSet> unseen;
  for (auto& [Q, N] : radicals) unseen.insert(Q);
  BruteWeights out;
  for (auto& [Q, N] : radicals) {
    if (!unseen.count(Q)) continue;
    for (const Permutation& g : elements) {
      ElemSet conj;
      for (const Permutation& q : Q) conj.push_back(q.conjugated_by(g));
      std::sort(conj.begin(), conj.end());
      unseen.erase(conj);
    }
    ++out.radical_class_count;
    out.radical_orders.push_back(Q.size());

    // N/Q as abstract cosets with explicit multiplication, realized by
    // regular-action permutations for the degree oracle
    std::set<Permutation> qset(Q.begin(), Q.end());
    std::vector<ElemSet> cosets;
    std::map<Permutation, uint32_t> coset_of;
    for (const Permutation& x : N) {
      if (coset_of.count(x)) continue;
      ElemSet coset;
      for (const Permutation& q : Q) coset.push_back(q * x);
      std::sort(coset.begin(), coset.end());
      uint32_t idx = static_cast<uint32_t>(cosets.size());
      for (const Permutation& c : coset) coset_of.emplace(c, idx);
      cosets.push_back(std::move(coset));
    }
    uint32_t m = static_cast<uint32_t>(cosets.size());
    std::vector<Permutation> quotient_elements;
    for (uint32_t i = 0; i < m; ++i) {
      std::vector<uint32_t> img(m);
      for (uint32_t j = 0; j < m; ++j)
        img[j] = coset_of.at(cosets[j].front() * cosets[i].front());
      quotient_elements.push_back(Permutation::from_images(img));
    }
    std::sort(quotient_elements.begin(), quotient_elements.end());
    out.weight_class_count += numeric_dz_count(quotient_elements, p);
  }
  std::sort(out.radical_orders.begin(), out.radical_orders.end());
  return out;
}

}  // namespace wftest
