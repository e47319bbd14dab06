#include "weightforge/actions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "weightforge/errors.hpp"

namespace weightforge {

namespace {

uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<uint64_t>((static_cast<__uint128_t>(r) * b) % m);
    b = static_cast<uint64_t>((static_cast<__uint128_t>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

uint64_t mult_order(uint64_t a, uint64_t m) {
  if (m == 1) return 1;
  uint64_t v = a % m, ord = 1;
  while (v != 1) {
    v = static_cast<uint64_t>((static_cast<__uint128_t>(v) * a) % m);
    if (++ord > m) throw InternalError("mult_order: not invertible");
  }
  return ord;
}

}  // namespace

GaloisElement make_galois(uint64_t exponent, uint64_t p, uint64_t t) {
  GaloisElement g;
  g.p = p;
  uint64_t m = exponent;
  while (m % p == 0) m /= p;
  g.modulus = m;
  g.order = mult_order(p, m);
  g.t = t % g.order;
  return g;
}

uint64_t galois_lift(uint64_t n, uint64_t p, uint64_t t) {
  uint64_t ppart = 1, m = n;
  while (m % p == 0) { m /= p; ppart *= p; }
  if (m == 1) return 1;
  // CRT: k = p^t mod m, k = 1 mod ppart; the scan stays below m * ppart = n
  uint64_t k = mod_pow(p, t, m);
  while (k % ppart != 1 % ppart) k += m;
  return k;
}

// ---------------------------------------------------------------------------
// automorphisms

AutomorphismSpec::AutomorphismSpec(std::string name, const PermutationGroup& G,
                                   std::vector<Permutation> generator_images)
    : name_(std::move(name)), degree_(G.degree()) {
  const auto& gens = G.generators();
  if (generator_images.size() != gens.size())
    throw InputError("automorphism \"" + name_ + "\": expected " + std::to_string(gens.size()) +
                     " generator images");
  for (const Permutation& img : generator_images)
    if (!G.contains(img))
      throw InputError("automorphism \"" + name_ + "\": an image is not a member of the group");

  // graph subgroup of G x G on 2n points
  std::vector<Permutation> pair_gens;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<uint32_t> img(2 * degree_);
    for (uint32_t x = 0; x < degree_; ++x) {
      img[x] = gens[i][x];
      img[degree_ + x] = degree_ + generator_images[i][x];
    }
    pair_gens.push_back(Permutation::from_images(std::move(img)));
  }
  graph_ = PermutationGroup::from_generators(2 * degree_, std::move(pair_gens));
  if (graph_.order() != G.order())
    throw InputError("automorphism \"" + name_ +
                     "\": generator map does not extend to a homomorphism (graph order " +
                     graph_.order().get_str() + " != |G| = " + G.order().get_str() + ")");
  PermutationGroup image = PermutationGroup::from_generators(degree_, generator_images);
  if (image.order() != G.order())
    throw InputError("automorphism \"" + name_ + "\": images generate a proper subgroup");
  // the chain must not need base points in the second copy; the graph of a
  // bijective map is determined by the first coordinate
  for (const ChainLevel& lvl : graph_.chain())
    if (lvl.base >= degree_)
      throw InternalError("automorphism graph chain uses a second-copy base point");
}

Permutation AutomorphismSpec::apply(const Permutation& g) const {
  // factor the unique graph element with first copy equal to g; its second
  // copy is the image. Walk the chain by first-copy images only.
  std::vector<uint32_t> digits;
  Permutation residue = g;
  for (const ChainLevel& lvl : graph_.chain()) {
    int32_t pos = lvl.orbit_pos[residue[lvl.base]];
    if (pos < 0) throw DomainError("automorphism apply: element is not a member of the group");
    digits.push_back(static_cast<uint32_t>(pos));
    // first-copy part of the inverse transversal element
    const Permutation& tinv = lvl.transversal_inv[pos];
    std::vector<uint32_t> first(degree_);
    for (uint32_t x = 0; x < degree_; ++x) first[x] = tinv[x];
    residue = residue * Permutation::from_images(std::move(first));
  }
  if (!residue.is_identity())
    throw DomainError("automorphism apply: element is not a member of the group");
  Permutation acc(2 * degree_);
  for (size_t i = graph_.chain().size(); i-- > 0;)
    acc = acc * graph_.chain()[i].transversal[digits[i]];
  std::vector<uint32_t> second(degree_);
  for (uint32_t x = 0; x < degree_; ++x) second[x] = acc[degree_ + x] - degree_;
  return Permutation::from_images(std::move(second));
}

AutomorphismSpec AutomorphismSpec::inverse() const {
  AutomorphismSpec inv;
  inv.name_ = name_ + "^-1";
  inv.degree_ = degree_;
  std::vector<Permutation> swapped;
  for (const Permutation& g : graph_.generators()) {
    std::vector<uint32_t> img(2 * degree_);
    for (uint32_t x = 0; x < degree_; ++x) {
      img[x] = g[degree_ + x] - degree_;
      img[degree_ + x] = degree_ + g[x];
    }
    swapped.push_back(Permutation::from_images(std::move(img)));
  }
  inv.graph_ = PermutationGroup::from_generators(2 * degree_, std::move(swapped));
  return inv;
}

// ---------------------------------------------------------------------------

void ActionTable::check_consistent() const {
  if (gen_images.size() != generator_names.size())
    throw InternalError("action table: generator count mismatch");
  for (const auto& img : gen_images) {
    if (img.size() != labels.size()) throw InternalError("action table: image size mismatch");
    std::vector<bool> seen(labels.size(), false);
    for (uint32_t v : img) {
      if (v >= labels.size() || seen[v]) throw InternalError("action table: image not a bijection");
      seen[v] = true;
    }
  }
}

std::vector<std::string> class_labels(const ClassData& cd) {
  std::vector<std::string> out;
  std::map<uint64_t, char> next_letter;
  for (const auto& c : cd.classes) {
    char& l = next_letter.try_emplace(c.element_order, 'a').first->second;
    out.push_back(std::to_string(c.element_order) + l);
    ++l;
  }
  return out;
}

std::vector<uint32_t> p_regular_indices(const ClassData& cd, uint64_t p) {
  std::vector<uint32_t> out;
  for (uint32_t k = 0; k < cd.class_count(); ++k)
    if (cd.classes[k].element_order % p != 0) out.push_back(k);
  return out;
}

std::vector<uint32_t> galois_on_classes(const PermutationGroup& G, const ClassData& cd,
                                        uint64_t p, uint64_t t) {
  std::vector<uint32_t> reg = p_regular_indices(cd, p);
  std::vector<int32_t> reg_pos(cd.class_count(), -1);
  for (uint32_t i = 0; i < reg.size(); ++i) reg_pos[reg[i]] = static_cast<int32_t>(i);
  std::vector<uint32_t> out(reg.size());
  for (uint32_t i = 0; i < reg.size(); ++i) {
    const ConjugacyClass& c = cd.classes[reg[i]];
    uint64_t e = mod_pow(p % c.element_order, t, c.element_order);
    uint32_t img = class_of(G, cd, c.representative.power(e == 0 ? c.element_order : e));
    if (reg_pos[img] < 0)
      throw InternalError("galois_on_classes: image class is not p-regular");
    out[i] = static_cast<uint32_t>(reg_pos[img]);
  }
  return out;
}

std::vector<uint32_t> aut_on_classes(const PermutationGroup& G, const ClassData& cd,
                                     const AutomorphismSpec& a) {
  std::vector<uint32_t> out(cd.class_count());
  for (uint32_t k = 0; k < cd.class_count(); ++k)
    out[k] = class_of(G, cd, a.apply(cd.classes[k].representative));
  return out;
}

namespace {

uint32_t find_row(const CharacterTable& t, const std::vector<Cyclotomic>& values) {
  for (uint32_t r = 0; r < t.rows(); ++r)
    if (t.values[r] == values) return r;
  throw InternalError("transformed character does not match any table row");
}

}  // namespace

std::vector<uint32_t> galois_on_character(const CharacterTable& t, uint64_t p, uint64_t tt) {
  std::vector<uint32_t> out(t.rows());
  for (uint32_t r = 0; r < t.rows(); ++r) {
    std::vector<Cyclotomic> img;
    img.reserve(t.rows());
    for (const Cyclotomic& v : t.values[r]) img.push_back(v.galois(galois_lift(v.conductor(), p, tt)));
    out[r] = find_row(t, img);
  }
  return out;
}

std::vector<uint32_t> aut_on_character(const CharacterTable& t, const AutomorphismSpec& a) {
  // chi^a(x) = chi(a^-1(x)): column k of the new row reads the value at the
  // class of a^-1(g_k), i.e. columns are permuted by the inverse class map
  AutomorphismSpec ainv = a.inverse();
  std::vector<uint32_t> colmap(t.rows());
  for (uint32_t k = 0; k < t.classes->class_count(); ++k)
    colmap[k] = class_of(*t.group, *t.classes, ainv.apply(t.classes->classes[k].representative));
  std::vector<uint32_t> out(t.rows());
  for (uint32_t r = 0; r < t.rows(); ++r) {
    std::vector<Cyclotomic> img(t.rows());
    for (uint32_t k = 0; k < t.rows(); ++k) img[k] = t.values[r][colmap[k]];
    out[r] = find_row(t, img);
  }
  return out;
}

// ---------------------------------------------------------------------------
// weight actions

namespace {

std::string weight_label(const WeightClassSet& w, uint32_t idx) {
  const WeightClass& wc = w.classes[idx];
  return "Q" + std::to_string(wc.radical_class + 1) + ":chi_" +
         std::to_string(wc.local_char + 1);
}

// index of the weight class with the given radical class and local row
uint32_t weight_index(const WeightClassSet& w, uint32_t rad, uint32_t row) {
  for (uint32_t i = 0; i < w.count(); ++i)
    if (w.classes[i].radical_class == rad && w.classes[i].local_char == row) return i;
  throw InternalError("weight action: image weight not in the class list");
}

// Transport of a local character along an automorphism: Q_c -> a(Q_c) -> the
// canonical class c' via a conjugator, then delta' = delta o alpha^-1 with
// alpha(y) = a(y)^x evaluated on class representatives of the target local
// quotient. Returns (c', row').
std::pair<uint32_t, uint32_t> transport_weight(const PermutationGroup& G, const WeightClassSet& w,
                                               const AutomorphismSpec& a,
                                               const AutomorphismSpec& ainv, uint32_t rad,
                                               uint32_t row) {
  const RadicalClass& rc = w.radicals[rad];
  std::vector<Permutation> qimg_gens;
  for (const Permutation& g : rc.subgroup.generators()) qimg_gens.push_back(a.apply(g));
  PermutationGroup Qa = PermutationGroup::from_generators(G.degree(), std::move(qimg_gens));

  uint32_t target = UINT32_MAX;
  Permutation conj(G.degree());
  for (const RadicalClass& cand : w.radicals) {
    if (cand.subgroup.order() != Qa.order()) continue;
    if (auto x = is_conjugate_subgroup(G, Qa, cand.subgroup)) {
      target = cand.id;
      conj = std::move(*x);
      break;
    }
  }
  if (target == UINT32_MAX)
    throw InternalError("weight action: automorphism image of a radical matched no class");

  const RadicalClass& rt = w.radicals[target];
  const CharacterTable& src = w.local_tables[rad];
  const CharacterTable& dst = w.local_tables[target];
  Permutation conj_inv = conj.inverse();
  std::vector<Cyclotomic> img(dst.rows());
  for (uint32_t k = 0; k < dst.classes->class_count(); ++k) {
    // lift the target class rep, pull back through alpha^-1, read the value
    Permutation yprime = rt.local->section(dst.classes->classes[k].representative);
    Permutation y = ainv.apply(conj * yprime * conj_inv);
    uint32_t src_class = class_of(rc.local->quotient(), *src.classes, rc.local->project(y));
    img[k] = src.values[row][src_class];
  }
  uint32_t new_row = find_row(dst, img);
  return {target, new_row};
}

}  // namespace

ActionTable action_on_weights(const PermutationGroup& G, const WeightClassSet& w,
                              const std::optional<GaloisElement>& galois,
                              const std::vector<AutomorphismSpec>& auts) {
  ActionTable at;
  for (uint32_t i = 0; i < w.count(); ++i) at.labels.push_back(weight_label(w, i));

  if (galois) {
    std::vector<std::vector<uint32_t>> rowperms;
    for (const CharacterTable& t : w.local_tables)
      rowperms.push_back(galois_on_character(t, galois->p, galois->t));
    std::vector<uint32_t> img(w.count());
    for (uint32_t i = 0; i < w.count(); ++i) {
      const WeightClass& wc = w.classes[i];
      img[i] = weight_index(w, wc.radical_class, rowperms[wc.radical_class][wc.local_char]);
    }
    at.generator_names.push_back("sigma_" + std::to_string(galois->p) +
                                 (galois->t == 1 ? "" : "^" + std::to_string(galois->t)));
    at.gen_images.push_back(std::move(img));
  }

  for (const AutomorphismSpec& a : auts) {
    AutomorphismSpec ainv = a.inverse();
    std::vector<uint32_t> img(w.count());
    for (uint32_t i = 0; i < w.count(); ++i) {
      const WeightClass& wc = w.classes[i];
      auto [rad2, row2] = transport_weight(G, w, a, ainv, wc.radical_class, wc.local_char);
      img[i] = weight_index(w, rad2, row2);
    }
    at.generator_names.push_back("aut:" + a.name());
    at.gen_images.push_back(std::move(img));
  }
  at.check_consistent();
  return at;
}

// ---------------------------------------------------------------------------

ActionTable ibr_profile(const PermutationGroup& G, const ClassData& cd, uint64_t p,
                        const std::optional<GaloisElement>& galois,
                        const std::vector<AutomorphismSpec>& auts) {
  std::vector<uint32_t> reg = p_regular_indices(cd, p);
  std::vector<int32_t> reg_pos(cd.class_count(), -1);
  for (uint32_t i = 0; i < reg.size(); ++i) reg_pos[reg[i]] = static_cast<int32_t>(i);

  ActionTable at;
  for (uint32_t i = 0; i < reg.size(); ++i)
    at.labels.push_back("phi_" + std::to_string(i + 1));

  if (galois) {
    at.generator_names.push_back("sigma_" + std::to_string(galois->p) +
                                 (galois->t == 1 ? "" : "^" + std::to_string(galois->t)));
    at.gen_images.push_back(galois_on_classes(G, cd, p, galois->t));
  }
  for (const AutomorphismSpec& a : auts) {
    std::vector<uint32_t> full = aut_on_classes(G, cd, a);
    std::vector<uint32_t> img(reg.size());
    for (uint32_t i = 0; i < reg.size(); ++i) {
      if (reg_pos[full[reg[i]]] < 0)
        throw InternalError("ibr_profile: automorphism image of a p-regular class is p-singular");
      img[i] = static_cast<uint32_t>(reg_pos[full[reg[i]]]);
    }
    at.generator_names.push_back("aut:" + a.name());
    at.gen_images.push_back(std::move(img));
  }
  at.check_consistent();

  // The bridge transfers element-wise fixed counts from p-regular classes to
  // IBr. For a cyclic image the fixed-point vector pins the action up to
  // isomorphism, so the relabeled class action is an exact model; otherwise
  // it is a counts-only profile.
  std::vector<std::vector<uint32_t>> closure;
  {
    std::vector<uint32_t> ident(reg.size());
    std::iota(ident.begin(), ident.end(), 0u);
    closure.push_back(ident);
    for (size_t head = 0; head < closure.size(); ++head)
      for (const auto& g : at.gen_images) {
        std::vector<uint32_t> prod(reg.size());
        for (uint32_t x = 0; x < reg.size(); ++x) prod[x] = g[closure[head][x]];
        if (std::find(closure.begin(), closure.end(), prod) == closure.end())
          closure.push_back(std::move(prod));
      }
  }
  bool cyclic = false;
  for (const auto& el : closure) {
    // order of el within the closure group
    std::vector<uint32_t> acc(reg.size());
    std::iota(acc.begin(), acc.end(), 0u);
    uint64_t ord = 0;
    do {
      std::vector<uint32_t> nxt(reg.size());
      for (uint32_t x = 0; x < reg.size(); ++x) nxt[x] = el[acc[x]];
      acc = std::move(nxt);
      ++ord;
    } while (acc != closure.front());
    if (ord == closure.size()) { cyclic = true; break; }
  }
  at.guarantee = cyclic ? ActionTable::Guarantee::kExplicit
                        : ActionTable::Guarantee::kFixedCountsOnly;
  return at;
}

}  // namespace weightforge
