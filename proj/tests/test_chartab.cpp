#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "weightforge/atlas.hpp"
#include "weightforge/character_table.hpp"
#include "weightforge/errors.hpp"

using namespace weightforge;

namespace {

std::shared_ptr<const PermutationGroup> make(uint32_t deg,
                                             std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(Permutation::from_cycles(c, deg));
  return std::make_shared<PermutationGroup>(PermutationGroup::from_generators(deg, gens));
}

CharacterTable table_of(std::shared_ptr<const PermutationGroup> G) {
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*G));
  return compute_character_table(std::move(G), std::move(cd));
}

std::vector<uint64_t> degrees_of(const CharacterTable& t) {
  std::vector<uint64_t> d;
  for (uint32_t r = 0; r < t.rows(); ++r) d.push_back(t.degree(r).get_ui());
  return d;
}

}  // namespace

TEST_CASE("computed degrees match the numeric oracle") {
  struct Case {
    uint32_t deg;
    std::vector<const char*> gens;
    std::vector<uint64_t> expect;
  };
  for (const Case& c : std::vector<Case>{
           {3, {"(1,2)", "(1,2,3)"}, {1, 1, 2}},
           {5, {"(1,2,3)", "(1,2,3,4,5)"}, {1, 3, 3, 4, 5}},
           {7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}, {1, 1, 1, 3, 3}},
           {4, {"(1,2)", "(1,2,3,4)"}, {1, 1, 2, 3, 3}}}) {
    std::vector<Permutation> gens;
    for (const char* s : c.gens) gens.push_back(Permutation::from_cycles(s, c.deg));
    auto G = std::make_shared<PermutationGroup>(PermutationGroup::from_generators(c.deg, gens));
    CharacterTable t = table_of(G);
    CHECK(degrees_of(t) == c.expect);
    // independent numeric eigen-decomposition over C
    CHECK(wftest::numeric_character_degrees(wftest::closure_elements(c.deg, gens)) == c.expect);
  }
}

TEST_CASE("column orthogonality holds exactly") {
  CharacterTable t = table_of(make(5, {"(1,2,3)", "(1,2,3,4,5)"}));
  const uint32_t n = t.rows();
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t l = 0; l < n; ++l) {
      Cyclotomic acc;
      for (uint32_t r = 0; r < n; ++r)
        acc += t.values[r][k] * t.values[r][t.inverse_classes[l]];
      if (k == l)
        CHECK(acc == Cyclotomic(mpq_class(t.classes->classes[k].centralizer_order)));
      else
        CHECK(acc.is_zero());
    }
}

TEST_CASE("defect zero detection") {
  CharacterTable a5 = table_of(make(5, {"(1,2,3)", "(1,2,3,4,5)"}));
  auto dz2 = defect_zero(a5, 2);
  REQUIRE(dz2.size() == 1);
  CHECK(a5.degree(dz2[0]) == 4);
  // p not dividing |G|: every character has defect zero
  CHECK(defect_zero(a5, 7).size() == a5.rows());
  // oracle agreement
  CHECK(wftest::numeric_dz_count(
            wftest::closure_elements(5, a5.group->generators()), 2) == 1);
}

TEST_CASE("block partition of A5 at p = 2") {
  CharacterTable t = table_of(make(5, {"(1,2,3)", "(1,2,3,4,5)"}));
  auto blocks = block_partition(t, 2);
  REQUIRE(blocks.size() == 2);
  // canonical order puts defect 0 first
  CHECK(blocks[0].defect == 0);
  CHECK(blocks[0].chars.size() == 1);
  CHECK(t.degree(blocks[0].chars[0]) == 4);
  CHECK(blocks[1].defect == 2);
  CHECK(blocks[1].principal);
  CHECK(blocks[1].chars.size() == 4);
}

TEST_CASE("blocks when p does not divide the order") {
  CharacterTable t = table_of(make(3, {"(1,2)", "(1,2,3)"}));
  auto blocks = block_partition(t, 5);
  CHECK(blocks.size() == t.rows());
  for (const Block& b : blocks) {
    CHECK(b.chars.size() == 1);
    CHECK(b.defect == 0);
  }
}

TEST_CASE("central character values are algebraic integers") {
  CharacterTable t = table_of(make(7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}));
  for (uint32_t r = 0; r < t.rows(); ++r)
    for (uint32_t k = 0; k < t.rows(); ++k)
      CHECK(central_character_value(t, r, k).is_integral());
}

TEST_CASE("table file round trip and rejection of corrupted data") {
  auto G = make(3, {"(1,2)", "(1,2,3)"});
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*G));
  CharacterTable t = compute_character_table(G, cd);
  nlohmann::json j = table_to_json(t, "S3");
  CharacterTable t2 = table_from_json(j, G, cd);
  CHECK(t2.values == t.values);

  nlohmann::json bad = j;
  bad["values"][2][1] = 7;
  CHECK_THROWS_AS(table_from_json(bad, G, cd), ValidationError);

  nlohmann::json bad2 = j;
  bad2["classes"][1]["size"] = "5";
  CHECK_THROWS_AS(table_from_json(bad2, G, cd), ValidationError);

  nlohmann::json bad3 = j;
  bad3["power_maps"]["2"][2] = 0;
  CHECK_THROWS_AS(table_from_json(bad3, G, cd), ValidationError);
}

TEST_CASE("J1 fixture table loads, validates, and has five 2-defect-zero characters") {
  GroupFile j1 = load_atlas_group("J1");
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*j1.group));
  nlohmann::json j = read_json_file(atlas_directory() + "/j1_table.json");
  CharacterTable t = table_from_json(j, j1.group, cd);
  CHECK(t.rows() == 15);
  CHECK(defect_zero(t, 2).size() == 5);
  auto blocks = block_partition(t, 2);
  uint32_t dz_blocks = 0;
  for (const Block& b : blocks)
    if (b.defect == 0) ++dz_blocks;
  CHECK(dz_blocks == 5);
  // defect-zero characters are exactly the union of the defect-zero blocks
  std::vector<uint32_t> from_blocks;
  for (const Block& b : blocks)
    if (b.defect == 0) from_blocks.insert(from_blocks.end(), b.chars.begin(), b.chars.end());
  std::sort(from_blocks.begin(), from_blocks.end());
  CHECK(from_blocks == defect_zero(t, 2));
}

TEST_CASE("inflation through a central p'-quotient preserves defect zero") {
  // 2xA5 -> A5 with Z = C2 central of odd-prime-free... Z has order 2, use p = 5
  GroupFile g2a5 = load_atlas_group("2xA5");
  auto G = g2a5.group;
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*G));
  CharacterTable big = compute_character_table(G, cd);
  PermutationGroup z = PermutationGroup::from_generators(
      G->degree(), {Permutation::from_cycles("(1,2)", G->degree())});
  QuotientMap qm(*G, z);
  auto Q = std::make_shared<PermutationGroup>(qm.quotient());
  auto qcd = std::make_shared<ClassData>(conjugacy_classes(*Q));
  CharacterTable small = compute_character_table(Q, qcd);

  for (uint64_t p : {5ull, 3ull}) {
    auto dz_small = defect_zero(small, p);
    auto dz_big = defect_zero(big, p);
    // each character of G/Z inflates to a row of the big table with the same
    // defect-zero status
    for (uint32_t r = 0; r < small.rows(); ++r) {
      std::vector<Cyclotomic> inflated(cd->class_count());
      for (uint32_t k = 0; k < cd->class_count(); ++k) {
        Permutation img = qm.project(cd->classes[k].representative);
        inflated[k] = small.values[r][class_of(*Q, *qcd, img)];
      }
      uint32_t row = UINT32_MAX;
      for (uint32_t rr = 0; rr < big.rows(); ++rr)
        if (big.values[rr] == inflated) { row = rr; break; }
      REQUIRE(row != UINT32_MAX);
      bool small_dz = std::find(dz_small.begin(), dz_small.end(), r) != dz_small.end();
      bool big_dz = std::find(dz_big.begin(), dz_big.end(), row) != dz_big.end();
      CHECK(small_dz == big_dz);
    }
  }
}

TEST_CASE("class bound triggers the load_table suggestion") {
  GroupFile j1 = load_atlas_group("J1");
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*j1.group));
  TableOptions opts;
  opts.max_classes = 10;
  CHECK_THROWS_AS(compute_character_table(j1.group, cd, opts), ResourceError);
}
