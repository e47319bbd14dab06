#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weightforge/character_table.hpp"
#include "weightforge/group_ops.hpp"
#include "weightforge/weights.hpp"

namespace weightforge {

/// sigma_p^t as it acts on everything in scope: through the cyclic image of
/// order ord_m(p), m the p'-part of exp(G). On ordinary character values the
/// map applied is the lift k = p^t mod m, k = 1 mod (p-part of the
/// conductor); the kernel of H -> <sigma_p> acts trivially on every object
/// the artifact manipulates.
struct GaloisElement {
  uint64_t p = 2;
  uint64_t t = 0;        // normalized mod order
  uint64_t modulus = 1;  // m = p'-part of exp(G)
  uint64_t order = 1;    // ord_m(p)
};

GaloisElement make_galois(uint64_t exponent, uint64_t p, uint64_t t);

/// The Galois lift k in (Z/n)^* with k = p^t mod (p'-part of n) and
/// k = 1 mod (p-part of n).
uint64_t galois_lift(uint64_t n, uint64_t p, uint64_t t);

/// A validated automorphism given by generator images. Validation builds the
/// graph subgroup <(g_i, f(g_i))> of G x G and checks it has order |G| with
/// the image generating a group of order |G|; evaluation at arbitrary
/// elements walks the graph group's stabilizer chain.
class AutomorphismSpec {
 public:
  AutomorphismSpec(std::string name, const PermutationGroup& G,
                   std::vector<Permutation> generator_images);

  const std::string& name() const { return name_; }
  Permutation apply(const Permutation& g) const;
  AutomorphismSpec inverse() const;

 private:
  AutomorphismSpec() = default;
  std::string name_;
  uint32_t degree_ = 0;
  PermutationGroup graph_;  // on 2 * degree points, bases in the first copy
};

/// A finite group action presented by labeled generators; the backbone of
/// every orbit report and the gamma-set comparison.
struct ActionTable {
  enum class Guarantee { kExplicit, kFixedCountsOnly };
  std::vector<std::string> generator_names;
  std::vector<std::string> labels;
  std::vector<std::vector<uint32_t>> gen_images;  // per generator, label permutation
  Guarantee guarantee = Guarantee::kExplicit;

  uint32_t size() const { return static_cast<uint32_t>(labels.size()); }
  void check_consistent() const;  // bijections, aligned sizes
};

/// [x] -> [x^(p^t)] on the p-regular classes; returns the permutation as
/// indices into the p-regular sublist.
std::vector<uint32_t> galois_on_classes(const PermutationGroup& G, const ClassData& cd,
                                        uint64_t p, uint64_t t);

/// Row permutation of the table under the Galois lift of sigma_p^t.
std::vector<uint32_t> galois_on_character(const CharacterTable& t, uint64_t p, uint64_t tt);

/// Class map [g] -> [a(g)] over all classes.
std::vector<uint32_t> aut_on_classes(const PermutationGroup& G, const ClassData& cd,
                                     const AutomorphismSpec& a);

/// Row permutation under chi^a(x) = chi(x^{a^-1}).
std::vector<uint32_t> aut_on_character(const CharacterTable& t, const AutomorphismSpec& a);

/// The sigma_p / automorphism action on the weight class labels.
ActionTable action_on_weights(const PermutationGroup& G, const WeightClassSet& w,
                              const std::optional<GaloisElement>& galois,
                              const std::vector<AutomorphismSpec>& auts);

/// The induced action profile on abstract IBr labels via the Brauer
/// permutation-lemma bridge: element-wise fixed counts equal those of the
/// class action; exact up to isomorphism when the acting image is cyclic.
ActionTable ibr_profile(const PermutationGroup& G, const ClassData& cd, uint64_t p,
                        const std::optional<GaloisElement>& galois,
                        const std::vector<AutomorphismSpec>& auts);

/// p-regular class labels like "5a", in canonical class order.
std::vector<std::string> class_labels(const ClassData& cd);
std::vector<uint32_t> p_regular_indices(const ClassData& cd, uint64_t p);

}  // namespace weightforge
