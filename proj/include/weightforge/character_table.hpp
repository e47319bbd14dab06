#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "weightforge/cyclotomic.hpp"
#include "weightforge/group_ops.hpp"
#include "weightforge/perm_group.hpp"

namespace weightforge {

/// Exact ordinary character table. Rows are sorted by (degree, value vector);
/// column k corresponds to classes->classes[k], column 0 being the identity
/// class. Immutable once built.
struct CharacterTable {
  std::shared_ptr<const PermutationGroup> group;
  std::shared_ptr<const ClassData> classes;
  uint64_t exponent = 1;
  std::vector<std::vector<Cyclotomic>> values;        // rows x classes
  std::map<uint64_t, std::vector<uint32_t>> power_maps;  // prime q | exp(G) -> class map
  std::vector<uint32_t> inverse_classes;              // class of representative^-1

  uint32_t rows() const { return static_cast<uint32_t>(values.size()); }
  const mpz_class& order() const { return group->order(); }
  mpz_class degree(uint32_t row) const;
  uint32_t trivial_row() const;  // index of the all-ones character

  /// Exhaustive exact validation; throws ValidationError naming the first
  /// failed relation. Called by both the computed and the loaded path.
  void validate() const;
};

struct TableOptions {
  uint32_t max_classes = 40;
  uint32_t max_retries = 5;
};

/// Dixon-Schneider: class-matrix eigenvectors over F_l (l = 1 mod exp(G),
/// l > 2 sqrt|G|) lifted to exact cyclotomic values and certified by
/// orthogonality.
CharacterTable compute_character_table(std::shared_ptr<const PermutationGroup> G,
                                       std::shared_ptr<const ClassData> cd,
                                       const TableOptions& opts = {});

nlohmann::json table_to_json(const CharacterTable& t, const std::string& group_name);
/// Parses and validates a table file against the group's computed class data.
CharacterTable table_from_json(const nlohmann::json& j,
                               std::shared_ptr<const PermutationGroup> G,
                               std::shared_ptr<const ClassData> cd);

nlohmann::json cyclotomic_to_json(const Cyclotomic& v);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

/// Indices of the characters with chi(1)_p = |G|_p.
std::vector<uint32_t> defect_zero(const CharacterTable& t, uint64_t p);

struct Block {
  std::vector<uint32_t> chars;  // character row indices
  uint32_t defect = 0;
  bool principal = false;
};

/// p-blocks by equality of reduced central characters; canonical order by
/// (defect, smallest member row).
std::vector<Block> block_partition(const CharacterTable& t, uint64_t p);

/// omega_chi(C_k) = |C_k| chi(g_k) / chi(1); exact, and verified integral.
Cyclotomic central_character_value(const CharacterTable& t, uint32_t row, uint32_t cls);

}  // namespace weightforge
