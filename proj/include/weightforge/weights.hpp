#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "json.hpp"
#include "weightforge/character_table.hpp"
#include "weightforge/group_ops.hpp"

namespace weightforge {

/// One G-class of radical p-subgroups, with its local data.
struct RadicalClass {
  uint32_t id = 0;
  PermutationGroup subgroup;    // class representative Q
  PermutationGroup normalizer;  // N_G(Q)
  std::vector<uint64_t> abelian_invariants;
  std::shared_ptr<QuotientMap> local;  // N_G(Q)/Q realized on cosets
};

struct WeightsLimits {
  uint64_t max_sylow_order = 4096;  // bottom-up subgroup enumeration cap
};

/// Complete duplicate-free list of radical p-subgroup classes, each verified
/// against the fixed point O_p(N_G(Q)) = Q after enumeration.
std::vector<RadicalClass> radical_subgroups(const PermutationGroup& G, uint64_t p,
                                            const WeightsLimits& limits = {});

/// Supplies the character table of a local quotient; the runner installs a
/// provider that serves a preloaded fixture table for the group itself and
/// computes everything else.
using TableProvider =
    std::function<CharacterTable(std::shared_ptr<const PermutationGroup> H,
                                 std::shared_ptr<const ClassData> cd)>;

TableProvider default_table_provider(const TableOptions& opts = {});

struct WeightClass {
  uint32_t radical_class = 0;
  uint32_t local_char = 0;  // row in the local quotient's table
  mpz_class local_degree;
};

struct WeightClassSet {
  std::vector<RadicalClass> radicals;
  std::vector<CharacterTable> local_tables;  // per radical class
  std::vector<std::vector<uint32_t>> dz_rows;  // defect-zero rows per radical class
  std::vector<WeightClass> classes;            // canonical order
  uint64_t p = 0;

  uint32_t count() const { return static_cast<uint32_t>(classes.size()); }
};

/// W(G)/~: one weight class per (radical class Q, defect-zero character of
/// N_G(Q)/Q). Conjugation inside N_G(Q) acts on the local quotient by inner
/// automorphisms, so distinct local characters always give distinct classes.
WeightClassSet enumerate_weights(const PermutationGroup& G, uint64_t p,
                                 const TableProvider& provider,
                                 const WeightsLimits& limits = {});

uint64_t p_regular_class_count(const ClassData& cd, uint64_t p);

struct AwcReport {
  uint64_t ibr_count = 0;
  uint64_t weight_class_count = 0;
  bool equal = false;
};

AwcReport awc_count_check(const ClassData& cd, const WeightClassSet& w, uint64_t p);

nlohmann::json weight_report_json(const WeightClassSet& w);

}  // namespace weightforge
