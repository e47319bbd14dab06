#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weightforge/actions.hpp"
#include "weightforge/character_table.hpp"
#include "weightforge/weights.hpp"

namespace weightforge {

/// Pairing of defect-zero blocks with the weight classes at Q = 1; the counts
/// must agree with the weight enumeration, anything else is a bug upstream.
struct DefectZeroPairing {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;  // (block index, weight class index)
};

DefectZeroPairing blocks_of_defect_zero_as_weights(const CharacterTable& t,
                                                   const std::vector<Block>& blocks,
                                                   const WeightClassSet& w);

/// Block labels with the permutations induced by Galois / automorphism
/// generators; a generator must map every character of a block into a single
/// block, and preserves defect, with the principal block fixed under Galois.
struct BlockActionView {
  std::vector<std::string> labels;
  std::vector<std::string> generator_names;
  std::vector<std::vector<uint32_t>> gen_images;
};

BlockActionView block_action(const CharacterTable& t, const std::vector<Block>& blocks,
                             const std::optional<GaloisElement>& galois,
                             const std::vector<AutomorphismSpec>& auts);

nlohmann::json blocks_json(const CharacterTable& t, const std::vector<Block>& blocks, uint64_t p);

}  // namespace weightforge
