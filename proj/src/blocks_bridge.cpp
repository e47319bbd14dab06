#include "weightforge/blocks_bridge.hpp"

#include <algorithm>

#include "weightforge/errors.hpp"

namespace weightforge {

DefectZeroPairing blocks_of_defect_zero_as_weights(const CharacterTable& t,
                                                   const std::vector<Block>& blocks,
                                                   const WeightClassSet& w) {
  // weight classes whose radical is O_p(G); when O_p(G) != 1 both sides are
  // empty because dz(G) is nonempty only for trivial p-core
  std::vector<uint32_t> trivial_weights;
  for (uint32_t i = 0; i < w.count(); ++i) {
    const RadicalClass& rc = w.radicals[w.classes[i].radical_class];
    if (rc.subgroup.order() == 1) trivial_weights.push_back(i);
  }
  std::vector<uint32_t> dz_blocks;
  for (uint32_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].defect == 0) dz_blocks.push_back(b);

  std::vector<uint32_t> dz = defect_zero(t, w.p);
  if (dz_blocks.size() != dz.size())
    throw InternalError("defect-zero block count differs from dz(G)");
  if (dz_blocks.size() != trivial_weights.size())
    throw InternalError("defect-zero block count " + std::to_string(dz_blocks.size()) +
                        " does not match the weight classes at Q = 1 (" +
                        std::to_string(trivial_weights.size()) + ")");

  // match by the character row: a defect-zero block is a singleton, and the
  // weight at Q = 1 is the same character of G = N_G(1)
  DefectZeroPairing out;
  for (uint32_t b : dz_blocks) {
    if (blocks[b].chars.size() != 1)
      throw InternalError("defect-zero block is not a singleton");
    uint32_t row = blocks[b].chars.front();
    bool found = false;
    for (uint32_t i : trivial_weights) {
      if (w.classes[i].local_char == row) {
        out.pairs.emplace_back(b, i);
        found = true;
        break;
      }
    }
    if (!found)
      throw InternalError("defect-zero block has no matching weight class at Q = 1");
  }
  return out;
}

namespace {

std::vector<uint32_t> induced_on_blocks(const std::vector<Block>& blocks,
                                        const std::vector<uint32_t>& row_perm) {
  std::vector<uint32_t> block_of_row(row_perm.size());
  for (uint32_t b = 0; b < blocks.size(); ++b)
    for (uint32_t r : blocks[b].chars) block_of_row[r] = b;
  std::vector<uint32_t> img(blocks.size(), UINT32_MAX);
  for (uint32_t b = 0; b < blocks.size(); ++b) {
    for (uint32_t r : blocks[b].chars) {
      uint32_t tb = block_of_row[row_perm[r]];
      if (img[b] == UINT32_MAX) img[b] = tb;
      else if (img[b] != tb)
        throw InternalError("block action is ill-defined: a block splits under the action");
    }
  }
  return img;
}

}  // namespace

BlockActionView block_action(const CharacterTable& t, const std::vector<Block>& blocks,
                             const std::optional<GaloisElement>& galois,
                             const std::vector<AutomorphismSpec>& auts) {
  BlockActionView v;
  for (uint32_t b = 0; b < blocks.size(); ++b)
    v.labels.push_back("B" + std::to_string(b + 1) + (blocks[b].principal ? "*" : ""));

  auto push = [&](const std::string& name, const std::vector<uint32_t>& row_perm) {
    std::vector<uint32_t> img = induced_on_blocks(blocks, row_perm);
    for (uint32_t b = 0; b < blocks.size(); ++b)
      if (blocks[img[b]].defect != blocks[b].defect)
        throw InternalError("block action does not preserve defect");
    v.generator_names.push_back(name);
    v.gen_images.push_back(std::move(img));
  };

  if (galois) {
    std::vector<uint32_t> rp = galois_on_character(t, galois->p, galois->t);
    push("sigma_" + std::to_string(galois->p) +
             (galois->t == 1 ? "" : "^" + std::to_string(galois->t)),
         rp);
    // the trivial character is rational, so the principal block is fixed
    for (uint32_t b = 0; b < blocks.size(); ++b)
      if (blocks[b].principal && v.gen_images.back()[b] != b)
        throw InternalError("Galois action moved the principal block");
  }
  for (const AutomorphismSpec& a : auts) push("aut:" + a.name(), aut_on_character(t, a));
  return v;
}

nlohmann::json blocks_json(const CharacterTable& t, const std::vector<Block>& blocks, uint64_t p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Block& b : blocks) {
    nlohmann::json chars = nlohmann::json::array();
    for (uint32_t r : b.chars) chars.push_back("chi_" + std::to_string(r + 1));
    arr.push_back({{"characters", chars},
                   {"defect", b.defect},
                   {"is_principal", b.principal}});
  }
  nlohmann::json dz = nlohmann::json::array();
  for (uint32_t r : defect_zero(t, p)) dz.push_back("chi_" + std::to_string(r + 1));
  return {{"prime", p}, {"blocks", arr}, {"defect_zero_characters", dz}};
}

}  // namespace weightforge
