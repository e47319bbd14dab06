#include <algorithm>
#include <numeric>

#include "weightforge/character_table.hpp"
#include "weightforge/errors.hpp"

namespace weightforge {

namespace {

// arithmetic in F_l for a word-sized prime l
struct Fl {
  uint64_t l;
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % l; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + l - b) % l; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % l);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    a %= l;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a, l - 2); }
};

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Vec = std::vector<uint64_t>;
using Mat = std::vector<Vec>;

// kernel basis of an n x n matrix over F_l
std::vector<Vec> kernel_basis(Mat m, const Fl& F) {
  const size_t n = m.size();
  std::vector<int> pivot_col_of_row(n, -1);
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < n; ++col) {
    size_t piv = rank;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[rank], m[piv]);
    uint64_t inv = F.inv(m[rank][col]);
    for (size_t j = 0; j < n; ++j) m[rank][j] = F.mul(m[rank][j], inv);
    for (size_t r = 0; r < n; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      uint64_t c = m[r][col];
      for (size_t j = 0; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(c, m[rank][j]));
    }
    pivot_col_of_row[rank] = static_cast<int>(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (size_t r = 0; r < rank; ++r) is_pivot[pivot_col_of_row[r]] = true;
  std::vector<Vec> basis;
  for (size_t col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Vec v(n, 0);
    v[col] = 1;
    for (size_t r = 0; r < rank; ++r)
      v[pivot_col_of_row[r]] = F.sub(0, m[r][col]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// solves B x = y for x where the columns of B (n x d) are independent
Vec solve_in_basis(const std::vector<Vec>& B, const Vec& y, const Fl& F) {
  const size_t n = y.size(), d = B.size();
  Mat aug(n, Vec(d + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < d; ++j) aug[i][j] = B[j][i];
    aug[i][d] = y[i];
  }
  size_t rank = 0;
  std::vector<int> pivot_col_of_row(d, -1);
  for (size_t col = 0; col < d && rank < n; ++col) {
    size_t piv = rank;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) throw InternalError("solve_in_basis: dependent basis");
    std::swap(aug[rank], aug[piv]);
    uint64_t inv = F.inv(aug[rank][col]);
    for (size_t j = 0; j <= d; ++j) aug[rank][j] = F.mul(aug[rank][j], inv);
    for (size_t r = 0; r < n; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      uint64_t c = aug[r][col];
      for (size_t j = 0; j <= d; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(c, aug[rank][j]));
    }
    pivot_col_of_row[col] = static_cast<int>(rank);
    ++rank;
  }
  Vec x(d, 0);
  for (size_t col = 0; col < d; ++col) x[col] = aug[pivot_col_of_row[col]][d];
  // consistency: rows beyond rank must be zero
  for (size_t r = rank; r < n; ++r)
    if (aug[r][d] != 0) throw InternalError("solve_in_basis: inconsistent system");
  return x;
}

// characteristic polynomial of a d x d matrix over F_l by interpolation of
// det(M - x I) at d+1 points
Vec char_poly(const Mat& M, const Fl& F) {
  const size_t d = M.size();
  std::vector<uint64_t> xs(d + 1), ys(d + 1);
  for (size_t s = 0; s <= d; ++s) {
    xs[s] = s;
    Mat A = M;
    for (size_t i = 0; i < d; ++i) A[i][i] = F.sub(A[i][i], s);
    // determinant by elimination
    uint64_t det = 1;
    for (size_t col = 0, row = 0; col < d; ++col, ++row) {
      size_t piv = row;
      while (piv < d && A[piv][col] == 0) ++piv;
      if (piv == d) { det = 0; break; }
      if (piv != row) { std::swap(A[piv], A[row]); det = F.sub(0, det); }
      det = F.mul(det, A[row][col]);
      uint64_t inv = F.inv(A[row][col]);
      for (size_t r = row + 1; r < d; ++r) {
        if (A[r][col] == 0) continue;
        uint64_t c = F.mul(A[r][col], inv);
        for (size_t j = col; j < d; ++j) A[r][j] = F.sub(A[r][j], F.mul(c, A[row][j]));
      }
    }
    ys[s] = det;
  }
  // Lagrange interpolation; degree d polynomial, coefficients low to high
  Vec poly(d + 1, 0);
  for (size_t s = 0; s <= d; ++s) {
    // basis polynomial prod_{t != s} (x - x_t) / (x_s - x_t)
    Vec num(1, 1);
    uint64_t den = 1;
    for (size_t t = 0; t <= d; ++t) {
      if (t == s) continue;
      Vec next(num.size() + 1, 0);
      for (size_t i = 0; i < num.size(); ++i) {
        next[i + 1] = F.add(next[i + 1], num[i]);
        next[i] = F.sub(next[i], F.mul(num[i], xs[t]));
      }
      num = std::move(next);
      den = F.mul(den, F.sub(xs[s], xs[t]));
    }
    uint64_t c = F.mul(ys[s], F.inv(den));
    for (size_t i = 0; i < num.size(); ++i) poly[i] = F.add(poly[i], F.mul(num[i], c));
  }
  return poly;
}

uint64_t eval_poly(const Vec& poly, uint64_t x, const Fl& F) {
  uint64_t acc = 0;
  for (size_t i = poly.size(); i-- > 0;) acc = F.add(F.mul(acc, x), poly[i]);
  return acc;
}

}  // namespace

CharacterTable compute_character_table(std::shared_ptr<const PermutationGroup> G,
                                       std::shared_ptr<const ClassData> cd,
                                       const TableOptions& opts) {
  const uint32_t n = cd->class_count();
  if (n > opts.max_classes)
    throw ResourceError("compute_table: " + std::to_string(n) + " classes exceeds the bound " +
                        std::to_string(opts.max_classes) +
                        "; supply a validated table file instead");
  if (cd->class_of_rank.empty())
    throw ResourceError("compute_table requires the deterministic class path (rank table)");

  const uint64_t gsize = G->order_u64();
  const uint64_t e = cd->exponent();

  // rank lists per class, for streaming class elements
  std::vector<std::vector<uint32_t>> class_ranks(n);
  for (uint64_t r = 0; r < gsize; ++r)
    class_ranks[cd->class_of_rank[r]].push_back(static_cast<uint32_t>(r));

  uint64_t isqrt = 1;
  while ((isqrt + 1) * (isqrt + 1) <= gsize) ++isqrt;

  uint64_t ell = e + 1;
  while (ell <= 2 * isqrt || !is_prime_u64(ell)) ell += e;

  for (uint32_t attempt = 0; attempt < opts.max_retries; ++attempt, ell += e) {
    while (!is_prime_u64(ell)) ell += e;
    Fl F{ell};

    // fixed element of order e in F_l^*
    uint64_t y = 0;
    {
      // smallest generator of F_l^*
      std::vector<uint64_t> qs;
      uint64_t t = ell - 1;
      for (uint64_t q = 2; q * q <= t; ++q)
        if (t % q == 0) {
          qs.push_back(q);
          while (t % q == 0) t /= q;
        }
      if (t > 1) qs.push_back(t);
      uint64_t g = 2;
      for (;; ++g) {
        bool ok = true;
        for (uint64_t q : qs)
          if (F.pow(g, (ell - 1) / q) == 1) { ok = false; break; }
        if (ok) break;
      }
      y = F.pow(g, (ell - 1) / e);
    }

    // lazy class matrices: (A_i)[j][k] = #{x in C_i : x^{-1} z_k in C_j}
    std::vector<Mat> cached(n);
    std::vector<bool> have(n, false);
    auto class_matrix = [&](uint32_t i) -> const Mat& {
      if (have[i]) return cached[i];
      Mat A(n, Vec(n, 0));
      std::vector<Permutation> zreps(n);
      for (uint32_t k = 0; k < n; ++k) zreps[k] = cd->classes[k].representative;
      for (uint32_t xr : class_ranks[i]) {
        Permutation xinv = G->unrank(xr).inverse();
        for (uint32_t k = 0; k < n; ++k) {
          uint32_t j = cd->class_of_rank[G->rank(xinv * zreps[k])];
          A[j][k] = F.add(A[j][k], 1);
        }
      }
      cached[i] = std::move(A);
      have[i] = true;
      return cached[i];
    };

    // split the coordinate space into common eigenspaces
    std::vector<std::vector<Vec>> spaces;
    {
      std::vector<Vec> full;
      for (uint32_t k = 0; k < n; ++k) {
        Vec v(n, 0);
        v[k] = 1;
        full.push_back(std::move(v));
      }
      spaces.push_back(std::move(full));
    }
    for (uint32_t i = 1; i < n; ++i) {
      bool all_one = true;
      for (const auto& sp : spaces)
        if (sp.size() > 1) all_one = false;
      if (all_one) break;
      const Mat& A = class_matrix(i);
      std::vector<std::vector<Vec>> next;
      for (auto& sp : spaces) {
        if (sp.size() == 1) {
          next.push_back(std::move(sp));
          continue;
        }
        const size_t d = sp.size();
        // restriction R of A to the invariant subspace spanned by sp
        Mat R(d, Vec(d));
        for (size_t c = 0; c < d; ++c) {
          Vec img(n, 0);
          for (size_t r = 0; r < n; ++r) {
            uint64_t acc = 0;
            for (size_t t = 0; t < n; ++t)
              if (sp[c][t]) acc = F.add(acc, F.mul(A[r][t], sp[c][t]));
            img[r] = acc;
          }
          Vec coords = solve_in_basis(sp, img, F);
          for (size_t r = 0; r < d; ++r) R[r][c] = coords[r];
        }
        Vec poly = char_poly(R, F);
        // roots by deterministic scan
        std::vector<uint64_t> roots;
        for (uint64_t lam = 0; lam < ell && roots.size() < d; ++lam)
          if (eval_poly(poly, lam, F) == 0) roots.push_back(lam);
        bool split_any = false;
        for (uint64_t lam : roots) {
          Mat Rl = R;
          for (size_t t = 0; t < d; ++t) Rl[t][t] = F.sub(Rl[t][t], lam);
          std::vector<Vec> ker = kernel_basis(Rl, F);
          if (ker.empty()) continue;
          if (ker.size() < d) split_any = true;
          std::vector<Vec> sub;
          for (const Vec& kv : ker) {
            Vec v(n, 0);
            for (size_t c = 0; c < d; ++c)
              if (kv[c])
                for (size_t r = 0; r < n; ++r) v[r] = F.add(v[r], F.mul(kv[c], sp[c][r]));
            sub.push_back(std::move(v));
          }
          next.push_back(std::move(sub));
        }
        if (!split_any && roots.size() == 1) {
          // single eigenvalue on the whole subspace: keep as is
          ;
        }
      }
      spaces = std::move(next);
    }

    bool all_split = true;
    for (const auto& sp : spaces)
      if (sp.size() != 1) all_split = false;
    if (!all_split || spaces.size() != n) continue;  // retry with the next prime

    // assemble central character vectors, normalized at the identity class
    std::vector<Vec> omegas;
    bool bad = false;
    for (auto& sp : spaces) {
      Vec v = sp[0];
      if (v[0] == 0) { bad = true; break; }
      uint64_t inv = F.inv(v[0]);
      for (auto& x : v) x = F.mul(x, inv);
      omegas.push_back(std::move(v));
    }
    if (bad) continue;

    // inverse classes
    std::vector<uint32_t> inv_class(n);
    for (uint32_t k = 0; k < n; ++k)
      inv_class[k] = cd->class_of_rank[G->rank(cd->classes[k].representative.inverse())];

    // degrees: chi(1)^2 = |G| / sum_k w_k w_{k*} / |C_k|
    std::vector<uint64_t> degrees(n, 0);
    for (uint32_t r = 0; r < n; ++r) {
      uint64_t s = 0;
      for (uint32_t k = 0; k < n; ++k) {
        uint64_t ck = mpz_class(cd->classes[k].size).get_ui() % ell;
        s = F.add(s, F.mul(F.mul(omegas[r][k], omegas[r][inv_class[k]]), F.inv(ck)));
      }
      if (s == 0) { bad = true; break; }
      uint64_t target = F.mul(gsize % ell, F.inv(s));
      for (uint64_t d = 1; d <= isqrt + 1; ++d)
        if (F.mul(d % ell, d % ell) == target) { degrees[r] = d; break; }
      if (!degrees[r]) { bad = true; break; }
    }
    if (bad) continue;

    // lift values: chi(g_k) = sum_j c_j zeta_m^j with c_j the multiplicity of
    // the j-th power of the fixed order-m root among the eigenvalues
    CharacterTable t;
    t.group = G;
    t.classes = cd;
    t.exponent = e;
    std::vector<std::vector<Cyclotomic>> rows(n, std::vector<Cyclotomic>(n));
    for (uint32_t k = 0; k < n && !bad; ++k) {
      uint64_t m = cd->classes[k].element_order;
      // classes of g_k^t for t in [0, m)
      std::vector<uint32_t> power_class(m);
      Permutation p(G->degree());
      for (uint64_t tt = 0; tt < m; ++tt) {
        power_class[tt] = cd->class_of_rank[G->rank(p)];
        p = p * cd->classes[k].representative;
      }
      uint64_t z = F.pow(y, e / m);  // order-m root in F_l
      uint64_t m_inv = F.inv(m % ell);
      for (uint32_t r = 0; r < n && !bad; ++r) {
        std::vector<mpq_class> coeffs(m, 0);
        for (uint64_t j = 0; j < m; ++j) {
          uint64_t s = 0;
          for (uint64_t tt = 0; tt < m; ++tt) {
            uint32_t kc = power_class[tt];
            uint64_t chihat = F.mul(F.mul(degrees[r] % ell, omegas[r][kc]),
                                    F.inv(mpz_class(cd->classes[kc].size).get_ui() % ell));
            s = F.add(s, F.mul(chihat, F.pow(z, (m - j % m) % m * tt % m)));
          }
          uint64_t cj = F.mul(s, m_inv);
          if (cj > degrees[r]) { bad = true; break; }
          coeffs[j] = static_cast<unsigned long>(cj);
        }
        if (bad) break;
        rows[r][k] = Cyclotomic::from_power_basis(m, coeffs);
      }
    }
    if (bad) continue;

    // canonical row order: (degree, value vector)
    std::vector<uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
      if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
      return std::lexicographical_compare(rows[a].begin(), rows[a].end(), rows[b].begin(),
                                          rows[b].end());
    });
    for (uint32_t r : idx) t.values.push_back(std::move(rows[r]));
    t.inverse_classes = inv_class;
    for (uint64_t q = 2; q <= e; ++q) {
      if (e % q) continue;
      bool is_p = true;
      for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { is_p = false; break; }
      if (!is_p) continue;
      std::vector<uint32_t> pm(n);
      for (uint32_t k = 0; k < n; ++k)
        pm[k] = cd->class_of_rank[G->rank(cd->classes[k].representative.power(q))];
      t.power_maps[q] = std::move(pm);
    }

    try {
      t.validate();
    } catch (const ValidationError&) {
      continue;  // lifting failed the exact certificate; retry with the next prime
    }
    return t;
  }
  throw InternalError("compute_table: no prime in the retry budget yielded a certified table");
}

}  // namespace weightforge
