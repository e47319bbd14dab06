#include "weightforge/perm_group.hpp"

#include <algorithm>
#include <deque>

#include "weightforge/errors.hpp"

namespace weightforge {

namespace {

// Recomputes the orbit of level.base under level.gens, extending the
// transversal. Points already present keep their transversal element, so
// incremental calls are cheap and deterministic.
void update_orbit(ChainLevel& level, uint32_t degree) {
  if (level.orbit.empty()) {
    level.orbit_pos.assign(degree, -1);
    level.orbit.push_back(level.base);
    level.orbit_pos[level.base] = 0;
    level.transversal.push_back(Permutation(degree));
    level.transversal_inv.push_back(Permutation(degree));
  }
  for (size_t i = 0; i < level.orbit.size(); ++i) {
    for (const Permutation& g : level.gens) {
      uint32_t img = g[level.orbit[i]];
      if (level.orbit_pos[img] < 0) {
        level.orbit_pos[img] = static_cast<int32_t>(level.orbit.size());
        level.orbit.push_back(img);
        Permutation t = level.transversal[i] * g;
        level.transversal_inv.push_back(t.inverse());
        level.transversal.push_back(std::move(t));
      }
    }
  }
}

}  // namespace

PermutationGroup PermutationGroup::trivial(uint32_t degree) {
  return from_generators(degree, {});
}

PermutationGroup PermutationGroup::from_generators(uint32_t degree,
                                                   std::vector<Permutation> gens) {
  PermutationGroup g;
  g.degree_ = degree;
  for (auto& x : gens) {
    if (x.degree() != degree)
      throw InputError("generator degree mismatch: expected " + std::to_string(degree));
    if (!x.is_identity() &&
        std::find(g.generators_.begin(), g.generators_.end(), x) == g.generators_.end())
      g.generators_.push_back(std::move(x));
  }
  g.build_chain();
  return g;
}

void PermutationGroup::build_chain() {
  chain_.clear();
  order_ = 1;
  if (generators_.empty()) return;

  auto first_moved = [&](const Permutation& p) -> uint32_t {
    for (uint32_t i = 0; i < degree_; ++i)
      if (p[i] != i) return i;
    return degree_;
  };

  // Level i holds the cumulative strong generator list S(i): every strong
  // generator fixing the base points of levels 0..i-1. The driver certifies
  // levels bottom-up; process(i) rescans the Schreier generators of level i
  // and either reports completion or the level where a new strong generator
  // was deposited, which is then re-certified first.
  constexpr size_t kDone = SIZE_MAX;
  auto process = [&](size_t i) -> size_t {
    update_orbit(chain_[i], degree_);
    for (size_t oi = 0; oi < chain_[i].orbit.size(); ++oi) {
      for (size_t gi = 0; gi < chain_[i].gens.size(); ++gi) {
        Permutation r = chain_[i].transversal[oi] * chain_[i].gens[gi];
        r = r * chain_[i].transversal_inv[chain_[i].orbit_pos[r[chain_[i].base]]];
        size_t j = i + 1;
        for (; j < chain_.size(); ++j) {
          if (r.is_identity()) break;
          int32_t pos = chain_[j].orbit_pos[r[chain_[j].base]];
          if (pos < 0) break;
          r = r * chain_[j].transversal_inv[pos];
        }
        if (r.is_identity()) continue;
        if (j == chain_.size()) {
          ChainLevel lvl;
          lvl.base = first_moved(r);
          chain_.push_back(std::move(lvl));
        }
        // r fixes all base points above level j; it belongs to S(i+1)..S(j)
        for (size_t l = i + 1; l < j; ++l) chain_[l].gens.push_back(r);
        chain_[j].gens.push_back(std::move(r));
        return j;
      }
    }
    return kDone;
  };

  {
    ChainLevel lvl;
    lvl.base = first_moved(generators_[0]);
    lvl.gens = generators_;
    chain_.push_back(std::move(lvl));
  }
  size_t i = 0;
  while (true) {
    size_t j = process(i);
    if (j != kDone) {
      i = j;
    } else if (i == 0) {
      break;
    } else {
      --i;
    }
  }

  order_ = 1;
  for (const ChainLevel& lvl : chain_) order_ *= static_cast<unsigned long>(lvl.orbit.size());
}

std::pair<Permutation, size_t> PermutationGroup::sift(const Permutation& g) const {
  Permutation r = g;
  size_t i = 0;
  for (; i < chain_.size(); ++i) {
    int32_t pos = chain_[i].orbit_pos[r[chain_[i].base]];
    if (pos < 0) return {std::move(r), i};
    r = r * chain_[i].transversal_inv[pos];
  }
  return {std::move(r), i};
}

bool PermutationGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  if (g.is_identity()) return true;
  if (chain_.empty()) return false;
  auto [r, level] = sift(g);
  return level == chain_.size() && r.is_identity();
}

bool PermutationGroup::contains_group(const PermutationGroup& h) const {
  for (const Permutation& g : h.generators())
    if (!contains(g)) return false;
  return true;
}

bool PermutationGroup::same_group(const PermutationGroup& h) const {
  return order_ == h.order_ && contains_group(h);
}

uint64_t PermutationGroup::order_u64() const {
  if (!order_.fits_ulong_p())
    throw ResourceError("group order " + order_.get_str() + " exceeds the machine-word bound");
  return order_.get_ui();
}

uint64_t PermutationGroup::rank(const Permutation& g) const {
  uint64_t r = 0;
  Permutation residue = g;
  // digits are read top level first; weight of level i is the product of
  // deeper orbit sizes
  for (size_t i = 0; i < chain_.size(); ++i) {
    int32_t pos = chain_[i].orbit_pos[residue[chain_[i].base]];
    if (pos < 0) throw DomainError("rank: element is not a member of the group");
    r = r * chain_[i].orbit.size() + static_cast<uint64_t>(pos);
    residue = residue * chain_[i].transversal_inv[pos];
  }
  if (!residue.is_identity()) throw DomainError("rank: element is not a member of the group");
  return r;
}

Permutation PermutationGroup::unrank(uint64_t r) const {
  Permutation acc(degree_);
  // g = t_{k-1} * ... * t_0 where t_i is the chosen transversal element of
  // level i; peel digits from the deepest level upward
  std::vector<uint32_t> digit(chain_.size());
  for (size_t i = chain_.size(); i-- > 0;) {
    digit[i] = static_cast<uint32_t>(r % chain_[i].orbit.size());
    r /= chain_[i].orbit.size();
  }
  for (size_t i = chain_.size(); i-- > 0;) acc = acc * chain_[i].transversal[digit[i]];
  return acc;
}

void PermutationGroup::for_each_element(
    const std::function<bool(const Permutation&)>& f) const {
  uint64_t n = order_u64();
  for (uint64_t r = 0; r < n; ++r)
    if (!f(unrank(r))) return;
}

std::vector<Permutation> PermutationGroup::elements(uint64_t cap) const {
  if (order_ > cap)
    throw ResourceError("element enumeration of a group of order " + order_.get_str() +
                        " exceeds the cap " + std::to_string(cap));
  std::vector<Permutation> out;
  out.reserve(order_u64());
  for_each_element([&](const Permutation& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

unsigned long PermutationGroup::p_valuation(unsigned long p) const {
  mpz_class rem;
  return mpz_remove(rem.get_mpz_t(), order_.get_mpz_t(), mpz_class(p).get_mpz_t());
}

}  // namespace weightforge
