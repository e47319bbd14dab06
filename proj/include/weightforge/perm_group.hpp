#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "weightforge/perm.hpp"

namespace weightforge {

/// One level of a stabilizer chain: a base point, the orbit of that point
/// under the level's generators, and an explicit transversal (orbit[k] =
/// base^transversal[k]).
struct ChainLevel {
  uint32_t base = 0;
  std::vector<uint32_t> orbit;
  std::vector<int32_t> orbit_pos;  // point -> index in orbit, or -1
  std::vector<Permutation> transversal;
  std::vector<Permutation> transversal_inv;
  std::vector<Permutation> gens;  // strong generators fixing all earlier bases
};

/// A finite permutation group with a verified stabilizer-chain certificate.
/// Immutable after construction; safe to share across threads for reads.
class PermutationGroup {
 public:
  static PermutationGroup from_generators(uint32_t degree, std::vector<Permutation> gens);
  static PermutationGroup trivial(uint32_t degree);
  PermutationGroup() = default;

  uint32_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const mpz_class& order() const { return order_; }
  /// Order as a machine word; throws ResourceError when it does not fit.
  uint64_t order_u64() const;
  bool is_trivial() const { return order_ == 1; }
  const std::vector<ChainLevel>& chain() const { return chain_; }

  bool contains(const Permutation& g) const;
  bool contains_group(const PermutationGroup& h) const;  // h <= this
  bool same_group(const PermutationGroup& h) const;

  /// Bijection between group elements and [0, |G|); requires |G| to fit u64.
  uint64_t rank(const Permutation& g) const;
  Permutation unrank(uint64_t r) const;

  /// Streams every element exactly once, in rank order; f may return false
  /// to stop early.
  void for_each_element(const std::function<bool(const Permutation&)>& f) const;
  std::vector<Permutation> elements(uint64_t cap) const;  // throws ResourceError above cap

  /// Exact p-part valuation nu_p(|G|).
  unsigned long p_valuation(unsigned long p) const;

 private:
  void build_chain();
  // Sifts g through the chain; returns the residue and the level reached.
  std::pair<Permutation, size_t> sift(const Permutation& g) const;

  uint32_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<ChainLevel> chain_;
  mpz_class order_ = 1;
};

}  // namespace weightforge
