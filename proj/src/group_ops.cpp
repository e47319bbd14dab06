#include "weightforge/group_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "weightforge/errors.hpp"

namespace weightforge {

uint64_t ClassData::exponent() const {
  uint64_t e = 1;
  for (const auto& c : classes) e = std::lcm(e, c.element_order);
  return e;
}

namespace {

bool class_less(const ConjugacyClass& a, const ConjugacyClass& b) {
  if (a.element_order != b.element_order) return a.element_order < b.element_order;
  if (a.size != b.size) return a.size < b.size;
  return a.representative < b.representative;
}

ClassData deterministic_classes(const PermutationGroup& G) {
  const uint64_t n = G.order_u64();
  std::vector<uint32_t> class_id(n, UINT32_MAX);
  std::vector<ConjugacyClass> classes;
  std::vector<uint64_t> bfs;

  for (uint64_t r0 = 0; r0 < n; ++r0) {
    if (class_id[r0] != UINT32_MAX) continue;
    uint32_t id = static_cast<uint32_t>(classes.size());
    Permutation g0 = G.unrank(r0);
    Permutation min_rep = g0;
    bfs.clear();
    bfs.push_back(r0);
    class_id[r0] = id;
    for (size_t head = 0; head < bfs.size(); ++head) {
      Permutation g = G.unrank(bfs[head]);
      for (const Permutation& x : G.generators()) {
        Permutation c = g.conjugated_by(x);
        uint64_t rc = G.rank(c);
        if (class_id[rc] == UINT32_MAX) {
          class_id[rc] = id;
          bfs.push_back(rc);
          if (c < min_rep) min_rep = std::move(c);
        }
      }
    }
    ConjugacyClass cls;
    cls.element_order = min_rep.order();
    cls.size = static_cast<unsigned long>(bfs.size());
    cls.centralizer_order = G.order() / cls.size;
    cls.representative = std::move(min_rep);
    classes.push_back(std::move(cls));
  }

  // canonical order, then remap the rank table
  std::vector<uint32_t> perm_idx(classes.size());
  std::iota(perm_idx.begin(), perm_idx.end(), 0u);
  std::sort(perm_idx.begin(), perm_idx.end(),
            [&](uint32_t a, uint32_t b) { return class_less(classes[a], classes[b]); });
  std::vector<uint32_t> new_of_old(classes.size());
  ClassData cd;
  for (uint32_t k = 0; k < classes.size(); ++k) {
    new_of_old[perm_idx[k]] = k;
    cd.classes.push_back(std::move(classes[perm_idx[k]]));
  }
  cd.class_of_rank.resize(n);
  for (uint64_t r = 0; r < n; ++r) cd.class_of_rank[r] = new_of_old[class_id[r]];
  return cd;
}

// Class discovery by uniform random sampling; each new class is certified by
// a hashed conjugation-orbit sweep that yields the exact class size, and the
// run as a whole by sum-of-sizes = |G|.
ClassData randomized_classes(const PermutationGroup& G, const ClassOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  auto random_element = [&] {
    Permutation acc(G.degree());
    for (size_t i = G.chain().size(); i-- > 0;) {
      const ChainLevel& lvl = G.chain()[i];
      acc = acc * lvl.transversal[rng() % lvl.orbit.size()];
    }
    return acc;
  };
  auto hash2 = [](const Permutation& p) {
    uint64_t h1 = 1469598103934665603ULL, h2 = 14695981039346656037ULL;
    for (uint32_t x : p.images()) {
      h1 = (h1 ^ x) * 1099511628211ULL;
      h2 = (h2 ^ (x + 0x9e3779b9)) * 0x100000001b3ULL;
    }
    return std::pair<uint64_t, uint64_t>{h1, h2};
  };

  std::vector<ConjugacyClass> classes;
  std::vector<std::unordered_set<uint64_t>> orbit_hashes;
  mpz_class covered = 0;
  uint64_t attempts = 0;
  while (covered < G.order()) {
    if (++attempts > 200 * (classes.size() + 1) + 10000)
      throw ResourceError("randomized class discovery failed to converge");
    Permutation g = random_element();
    auto [h1, h2] = hash2(g);
    uint64_t key = h1 ^ (h2 << 1 | h2 >> 63);
    bool known = false;
    for (const auto& seen : orbit_hashes)
      if (seen.count(key)) { known = true; break; }
    if (known) continue;

    // full conjugation orbit of g, hashed
    std::unordered_set<uint64_t> seen;
    std::deque<Permutation> q;
    Permutation min_rep = g;
    q.push_back(g);
    seen.insert(key);
    while (!q.empty()) {
      Permutation e = std::move(q.front());
      q.pop_front();
      for (const Permutation& x : G.generators()) {
        Permutation c = e.conjugated_by(x);
        auto [c1, c2] = hash2(c);
        uint64_t ckey = c1 ^ (c2 << 1 | c2 >> 63);
        if (seen.insert(ckey).second) {
          if (seen.size() > opts.randomized_orbit_cap)
            throw ResourceError("conjugacy class orbit exceeds the randomized cap");
          if (c < min_rep) min_rep = c;
          q.push_back(std::move(c));
        }
      }
    }
    ConjugacyClass cls;
    cls.element_order = min_rep.order();
    cls.size = static_cast<unsigned long>(seen.size());
    cls.centralizer_order = G.order() / cls.size;
    cls.representative = std::move(min_rep);
    covered += cls.size;
    classes.push_back(std::move(cls));
    orbit_hashes.push_back(std::move(seen));
  }
  if (covered != G.order())
    throw InternalError("randomized class discovery: sum of class sizes != |G|");
  std::sort(classes.begin(), classes.end(), class_less);
  ClassData cd;
  cd.classes = std::move(classes);
  cd.randomized = true;
  return cd;
}

}  // namespace

ClassData conjugacy_classes(const PermutationGroup& G, const ClassOptions& opts) {
  if (G.order() <= static_cast<unsigned long>(opts.deterministic_limit))
    return deterministic_classes(G);
  return randomized_classes(G, opts);
}

uint32_t class_of(const PermutationGroup& G, const ClassData& cd, const Permutation& g) {
  if (!cd.class_of_rank.empty()) return cd.class_of_rank[G.rank(g)];
  uint64_t ord = g.order();
  for (uint32_t k = 0; k < cd.class_count(); ++k) {
    if (cd.classes[k].element_order != ord) continue;
    if (cd.classes[k].representative == g ||
        conjugating_element(G, cd.classes[k].representative, g))
      return k;
  }
  throw InternalError("class_of: element matched no class");
}

// ---------------------------------------------------------------------------
// orbit-stabilizer engine: generic over the acted object

namespace {

struct ElementOrbit {
  std::vector<Permutation> points;       // orbit of the element under conjugation
  std::vector<Permutation> transversal;  // points[i] = start^transversal[i]
  std::unordered_map<Permutation, uint32_t, PermHash> index;
};

ElementOrbit element_orbit(const PermutationGroup& G, const Permutation& start,
                           const Permutation* stop_at) {
  ElementOrbit o;
  o.points.push_back(start);
  o.transversal.push_back(Permutation(G.degree()));
  o.index.emplace(start, 0);
  for (size_t i = 0; i < o.points.size(); ++i) {
    for (const Permutation& x : G.generators()) {
      Permutation c = o.points[i].conjugated_by(x);
      if (o.index.emplace(c, static_cast<uint32_t>(o.points.size())).second) {
        o.transversal.push_back(o.transversal[i] * x);
        o.points.push_back(std::move(c));
        if (stop_at && o.points.back() == *stop_at) return o;
      }
    }
  }
  return o;
}

using SubgroupKey = std::vector<uint32_t>;  // sorted element ranks within G

SubgroupKey subgroup_key(const PermutationGroup& G, const std::vector<Permutation>& elements) {
  SubgroupKey key;
  key.reserve(elements.size());
  for (const Permutation& e : elements) key.push_back(static_cast<uint32_t>(G.rank(e)));
  std::sort(key.begin(), key.end());
  return key;
}

struct SubgroupOrbit {
  std::vector<std::vector<Permutation>> points;  // element lists of the conjugates
  std::vector<Permutation> transversal;
  std::unordered_map<SubgroupKey, uint32_t, PermHash> index;
};

SubgroupOrbit subgroup_orbit(const PermutationGroup& G, const std::vector<Permutation>& start,
                             const SubgroupKey* stop_at) {
  SubgroupOrbit o;
  o.points.push_back(start);
  o.transversal.push_back(Permutation(G.degree()));
  o.index.emplace(subgroup_key(G, start), 0);
  for (size_t i = 0; i < o.points.size(); ++i) {
    for (const Permutation& x : G.generators()) {
      std::vector<Permutation> conj;
      conj.reserve(o.points[i].size());
      for (const Permutation& e : o.points[i]) conj.push_back(e.conjugated_by(x));
      SubgroupKey key = subgroup_key(G, conj);
      if (o.index.emplace(key, static_cast<uint32_t>(o.points.size())).second) {
        o.transversal.push_back(o.transversal[i] * x);
        o.points.push_back(std::move(conj));
        if (stop_at && key == *stop_at) return o;
      }
    }
  }
  return o;
}

// Schreier generators of the stabilizer of points[0] in an orbit with
// transversal; index(point) resolves a point to its orbit position.
template <typename Orbit, typename ImageFn>
PermutationGroup orbit_stabilizer(const PermutationGroup& G, const Orbit& o, ImageFn&& image_of) {
  std::vector<Permutation> gens;
  for (size_t i = 0; i < o.points.size(); ++i) {
    for (const Permutation& x : G.generators()) {
      uint32_t j = image_of(i, x);
      Permutation s = o.transversal[i] * x * o.transversal[j].inverse();
      if (!s.is_identity()) gens.push_back(std::move(s));
    }
  }
  PermutationGroup stab = PermutationGroup::from_generators(G.degree(), std::move(gens));
  if (stab.order() * static_cast<unsigned long>(o.points.size()) != G.order())
    throw InternalError("orbit-stabilizer certificate failed: |stab|*|orbit| != |G|");
  return stab;
}

}  // namespace

PermutationGroup centralizer(const PermutationGroup& G, const Permutation& g) {
  if (!G.contains(g)) throw DomainError("centralizer: element is not a member of the group");
  ElementOrbit o = element_orbit(G, g, nullptr);
  return orbit_stabilizer(G, o, [&](size_t i, const Permutation& x) {
    return o.index.at(o.points[i].conjugated_by(x));
  });
}

std::optional<Permutation> conjugating_element(const PermutationGroup& G, const Permutation& g,
                                               const Permutation& h) {
  if (g.order() != h.order() || g.cycles().size() != h.cycles().size()) return std::nullopt;
  ElementOrbit o = element_orbit(G, g, &h);
  auto it = o.index.find(h);
  if (it == o.index.end()) return std::nullopt;
  Permutation w = o.transversal[it->second];
  if (!(g.conjugated_by(w) == h)) throw InternalError("conjugating_element: witness check failed");
  return w;
}

namespace {

constexpr uint64_t kSubgroupElementCap = 100000;

std::vector<Permutation> subgroup_elements(const PermutationGroup& H) {
  return H.elements(kSubgroupElementCap);
}

}  // namespace

PermutationGroup normalizer(const PermutationGroup& G, const PermutationGroup& H) {
  if (!G.contains_group(H)) throw DomainError("normalizer: H is not a subgroup of G");
  if (H.is_trivial() || H.same_group(G)) return G;
  SubgroupOrbit o = subgroup_orbit(G, subgroup_elements(H), nullptr);
  PermutationGroup n = orbit_stabilizer(G, o, [&](size_t i, const Permutation& x) {
    std::vector<Permutation> conj;
    conj.reserve(o.points[i].size());
    for (const Permutation& e : o.points[i]) conj.push_back(e.conjugated_by(x));
    return o.index.at(subgroup_key(G, conj));
  });
  if (!n.contains_group(H)) throw InternalError("normalizer does not contain H");
  return n;
}

std::optional<Permutation> is_conjugate_subgroup(const PermutationGroup& G,
                                                 const PermutationGroup& H1,
                                                 const PermutationGroup& H2) {
  if (!G.contains_group(H1) || !G.contains_group(H2))
    throw DomainError("is_conjugate_subgroup: arguments must be subgroups of G");
  if (H1.order() != H2.order()) return std::nullopt;
  if (H1.same_group(H2)) return Permutation(G.degree());
  std::vector<Permutation> e1 = subgroup_elements(H1);
  SubgroupKey target = subgroup_key(G, subgroup_elements(H2));
  SubgroupOrbit o = subgroup_orbit(G, e1, &target);
  auto it = o.index.find(target);
  if (it == o.index.end()) return std::nullopt;
  Permutation w = o.transversal[it->second];
  for (const Permutation& g : H1.generators())
    if (!H2.contains(g.conjugated_by(w)))
      throw InternalError("is_conjugate_subgroup: witness check failed");
  return w;
}

PermutationGroup sylow_subgroup(const PermutationGroup& G, uint64_t p) {
  unsigned long target_val = G.p_valuation(p);
  PermutationGroup P = PermutationGroup::trivial(G.degree());
  if (target_val == 0) return P;
  while (P.p_valuation(p) < target_val) {
    PermutationGroup N = P.is_trivial() ? G : normalizer(G, P);
    // a p-element of N outside P exists because P is properly contained in a
    // Sylow p-subgroup of N (P is normal in N)
    std::optional<Permutation> grow;
    N.for_each_element([&](const Permutation& y) {
      uint64_t ord = y.order();
      uint64_t m = ord;
      while (m % p == 0) m /= p;
      if (m == ord) return true;  // no p-part
      Permutation z = y.power(m);
      if (!P.contains(z)) {
        grow = std::move(z);
        return false;
      }
      return true;
    });
    if (!grow) throw InternalError("sylow_subgroup: no p-element found while |P| < |G|_p");
    std::vector<Permutation> gens = P.generators();
    gens.push_back(std::move(*grow));
    P = PermutationGroup::from_generators(G.degree(), std::move(gens));
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, P.p_valuation(p));
    if (P.order() != pw) throw InternalError("sylow_subgroup: grown subgroup is not a p-group");
  }
  return P;
}

PermutationGroup p_core(const PermutationGroup& G, uint64_t p) {
  PermutationGroup K = sylow_subgroup(G, p);
  bool stable = false;
  while (!stable) {
    stable = true;
    for (const Permutation& x : G.generators()) {
      std::vector<Permutation> kelems = subgroup_elements(K);
      std::unordered_set<Permutation, PermHash> conj_set;
      for (const Permutation& e : kelems) conj_set.insert(e.conjugated_by(x));
      std::vector<Permutation> inter;
      for (const Permutation& e : kelems)
        if (conj_set.count(e)) inter.push_back(e);
      if (inter.size() != kelems.size()) {
        K = PermutationGroup::from_generators(G.degree(), std::move(inter));
        stable = false;
      }
    }
  }
  for (const Permutation& x : G.generators())
    for (const Permutation& k : K.generators())
      if (!K.contains(k.conjugated_by(x))) throw InternalError("p_core: result is not normal");
  return K;
}

// ---------------------------------------------------------------------------
// quotient realization

QuotientMap::QuotientMap(PermutationGroup mother, PermutationGroup kernel)
    : mother_(std::move(mother)), kernel_(std::move(kernel)) {
  if (!mother_.contains_group(kernel_))
    throw DomainError("quotient: kernel is not a subgroup of the mother group");
  for (const Permutation& x : mother_.generators())
    for (const Permutation& k : kernel_.generators())
      if (!kernel_.contains(k.conjugated_by(x)))
        throw DomainError("quotient: kernel is not normal in the mother group");

  if (kernel_.is_trivial()) {
    identity_map_ = true;
    quotient_ = mother_;
    return;
  }
  kernel_elements_ = kernel_.elements(kSubgroupElementCap);

  // BFS over cosets; a coset is identified by the minimal image vector of its
  // members, so the numbering is independent of the generator words used
  coset_reps_.push_back(Permutation(mother_.degree()));
  coset_index_.emplace(coset_key(coset_reps_[0]), 0);
  for (size_t i = 0; i < coset_reps_.size(); ++i) {
    for (const Permutation& x : mother_.generators()) {
      Permutation t = coset_reps_[i] * x;
      auto key = coset_key(t);
      if (coset_index_.emplace(key, static_cast<uint32_t>(coset_reps_.size())).second)
        coset_reps_.push_back(std::move(t));
    }
  }
  mpz_class expected = mother_.order() / kernel_.order();
  if (expected != static_cast<unsigned long>(coset_reps_.size()))
    throw InternalError("quotient: coset count does not match |N|/|Q|");

  std::vector<Permutation> qgens;
  for (const Permutation& x : mother_.generators()) qgens.push_back(project_raw(x));
  quotient_ = PermutationGroup::from_generators(static_cast<uint32_t>(coset_reps_.size()),
                                                std::move(qgens));
  if (quotient_.order() != expected)
    throw InternalError("quotient: coset action order does not match |N|/|Q|");
}

std::vector<uint32_t> QuotientMap::coset_key(const Permutation& rep) const {
  std::vector<uint32_t> best;
  for (const Permutation& k : kernel_elements_) {
    Permutation c = k * rep;
    if (best.empty() || c.images() < best) best = c.images();
  }
  return best;
}

Permutation QuotientMap::project_raw(const Permutation& n) const {
  std::vector<uint32_t> img(coset_reps_.size());
  for (uint32_t i = 0; i < coset_reps_.size(); ++i) {
    auto it = coset_index_.find(coset_key(coset_reps_[i] * n));
    if (it == coset_index_.end())
      throw DomainError("quotient projection: element is not in the mother group");
    img[i] = it->second;
  }
  return Permutation::from_images(std::move(img));
}

Permutation QuotientMap::project(const Permutation& n) const {
  if (identity_map_) return n;
  return project_raw(n);
}

Permutation QuotientMap::section(const Permutation& q) const {
  if (identity_map_) return q;
  const Permutation& rep = coset_reps_[q[0]];
  if (!(project(rep) == q))
    throw InternalError("quotient section: representative does not project back");
  return rep;
}

std::vector<uint64_t> abelian_invariants(const PermutationGroup& H, uint64_t cap) {
  // commutator subgroup as the normal closure of generator commutators
  std::vector<Permutation> elems = H.elements(cap);
  std::vector<Permutation> comms;
  for (const Permutation& a : H.generators())
    for (const Permutation& b : H.generators()) {
      Permutation c = a.inverse() * b.inverse() * a * b;
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  PermutationGroup D = PermutationGroup::from_generators(H.degree(), comms);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Permutation> add;
    for (const Permutation& d : D.generators())
      for (const Permutation& x : H.generators()) {
        Permutation c = d.conjugated_by(x);
        if (!D.contains(c)) add.push_back(std::move(c));
      }
    if (!add.empty()) {
      std::vector<Permutation> gens = D.generators();
      gens.insert(gens.end(), add.begin(), add.end());
      D = PermutationGroup::from_generators(H.degree(), std::move(gens));
      grew = true;
    }
  }
  QuotientMap ab(H, D);
  const PermutationGroup& A = ab.quotient();

  // invariants of the abelian group A, prime by prime: with A_p of type
  // lambda_1 >= lambda_2 >= ..., the count of elements of order dividing p^i
  // is p^{sum_j min(lambda_j, i)}, so the increments of those logs give the
  // conjugate partition
  std::vector<Permutation> aelems = A.elements(cap);
  std::vector<uint64_t> primes;
  {
    mpz_class n = A.order();
    for (uint64_t p = 2; mpz_class(p) * p <= n; ++p)
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        primes.push_back(p);
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= static_cast<unsigned long>(p);
      }
    if (n > 1) primes.push_back(n.get_ui());
  }
  std::vector<uint64_t> invariants;
  for (uint64_t p : primes) {
    uint64_t maxi = 0;
    for (const Permutation& e : aelems) {
      uint64_t ord = e.order(), i = 0;
      while (ord % p == 0) { ord /= p; ++i; }
      maxi = std::max(maxi, i);
    }
    std::vector<uint64_t> log_dividing(maxi + 1, 0);  // i -> log_p #{a : a^(p^i) = 1}
    for (uint64_t i = 0; i <= maxi; ++i) {
      uint64_t count = 0;
      for (const Permutation& e : aelems) {
        uint64_t ord = e.order(), j = 0;
        while (ord % p == 0) { ord /= p; ++j; }
        if (ord == 1 && j <= i) ++count;
      }
      uint64_t lg = 0;
      while (count > 1) { count /= p; ++lg; }
      log_dividing[i] = lg;
    }
    // parts_ge[i] = #{j : lambda_j >= i}
    for (uint64_t i = 1; i <= maxi; ++i) {
      uint64_t ge_i = log_dividing[i] - log_dividing[i - 1];
      uint64_t ge_next = i < maxi ? log_dividing[i + 1] - log_dividing[i] : 0;
      uint64_t pi = 1;
      for (uint64_t t = 0; t < i; ++t) pi *= p;
      for (uint64_t j = ge_next; j < ge_i; ++j) invariants.push_back(pi);
    }
  }
  std::sort(invariants.begin(), invariants.end());
  return invariants;
}

}  // namespace weightforge
