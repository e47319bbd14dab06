#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "weightforge/perm.hpp"
#include "weightforge/perm_group.hpp"

namespace weightforge {

struct ConjugacyClass {
  Permutation representative;  // lexicographically minimal member
  mpz_class size;
  mpz_class centralizer_order;
  uint64_t element_order = 1;
};

/// Conjugacy classes in the canonical order (element order, class size,
/// minimal representative). For groups within the deterministic limit the
/// full element-rank -> class-index table is kept; it makes class lookups,
/// power maps and class matrices O(sift).
struct ClassData {
  std::vector<ConjugacyClass> classes;
  std::vector<uint32_t> class_of_rank;  // empty when the randomized path was used
  bool randomized = false;

  uint32_t class_count() const { return static_cast<uint32_t>(classes.size()); }
  /// lcm of the element orders of all classes = exp(G)
  uint64_t exponent() const;
};

struct ClassOptions {
  uint64_t deterministic_limit = 1000000;  // sweep all ranks up to this order
  uint64_t randomized_orbit_cap = 20000000;
  uint64_t seed = 0x5eed5eed5eedULL;
};

ClassData conjugacy_classes(const PermutationGroup& G, const ClassOptions& opts = {});

/// Class index of an arbitrary member; uses the rank table when present.
uint32_t class_of(const PermutationGroup& G, const ClassData& cd, const Permutation& g);

/// Centralizer C_G(g), computed as the stabilizer of g in the conjugation
/// action of G on the class of g (Schreier generators of the orbit).
PermutationGroup centralizer(const PermutationGroup& G, const Permutation& g);

/// Some x in G with g^x = h, if one exists.
std::optional<Permutation> conjugating_element(const PermutationGroup& G, const Permutation& g,
                                               const Permutation& h);

/// Normalizer N_G(H) for H <= G; orbit-stabilizer on the conjugates of H.
PermutationGroup normalizer(const PermutationGroup& G, const PermutationGroup& H);

/// Some g with H1^g = H2, verified by explicit image check; nullopt otherwise.
std::optional<Permutation> is_conjugate_subgroup(const PermutationGroup& G,
                                                 const PermutationGroup& H1,
                                                 const PermutationGroup& H2);

PermutationGroup sylow_subgroup(const PermutationGroup& G, uint64_t p);

/// O_p(G): iterated intersection of a Sylow p-subgroup with its conjugates
/// under the group generators until stable.
PermutationGroup p_core(const PermutationGroup& G, uint64_t p);

/// Faithful realization of N/Q on the right cosets of Q (kernel of the coset
/// action is the core of Q in N, which is Q itself whenever Q is normal).
/// For Q trivial the quotient is N with identity projection.
class QuotientMap {
 public:
  QuotientMap(PermutationGroup mother, PermutationGroup kernel);

  const PermutationGroup& mother() const { return mother_; }
  const PermutationGroup& kernel() const { return kernel_; }
  const PermutationGroup& quotient() const { return quotient_; }

  Permutation project(const Permutation& n) const;
  /// A preimage of a quotient element; project(section(q)) == q.
  Permutation section(const Permutation& q) const;

 private:
  std::vector<uint32_t> coset_key(const Permutation& rep) const;
  Permutation project_raw(const Permutation& n) const;

  PermutationGroup mother_, kernel_, quotient_;
  bool identity_map_ = false;
  std::vector<Permutation> kernel_elements_;
  std::vector<Permutation> coset_reps_;
  std::unordered_map<std::vector<uint32_t>, uint32_t, PermHash> coset_index_;
};

/// Abelian invariants of the abelianization H/[H,H], as the multiset of
/// cyclic orders in invariant-factor-free prime-power form, e.g. (C2)^3 ->
/// [2,2,2], C4xC2 -> [2,4]. Requires |H| within the element enumeration cap.
std::vector<uint64_t> abelian_invariants(const PermutationGroup& H, uint64_t cap = 100000);

}  // namespace weightforge
