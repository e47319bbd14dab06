#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "weightforge/atlas.hpp"
#include "weightforge/errors.hpp"
#include "weightforge/weights.hpp"

using namespace weightforge;

namespace {

PermutationGroup make(uint32_t deg, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(Permutation::from_cycles(c, deg));
  return PermutationGroup::from_generators(deg, gens);
}

std::vector<uint64_t> radical_orders(const std::vector<RadicalClass>& rads) {
  std::vector<uint64_t> out;
  for (const auto& rc : rads) out.push_back(rc.subgroup.order().get_ui());
  return out;
}

}  // namespace

TEST_CASE("radical subgroups of a p-group is the group itself") {
  PermutationGroup d8 = make(4, {"(1,2,3,4)", "(1,3)"});
  auto rads = radical_subgroups(d8, 2);
  REQUIRE(rads.size() == 1);
  CHECK(rads[0].subgroup.same_group(d8));
}

TEST_CASE("radical subgroups of A5 at p = 2 are 1 and V4") {
  PermutationGroup a5 = make(5, {"(1,2,3)", "(1,2,3,4,5)"});
  auto rads = radical_subgroups(a5, 2);
  CHECK(radical_orders(rads) == std::vector<uint64_t>{1, 4});
  CHECK(rads[1].abelian_invariants == std::vector<uint64_t>{2, 2});
  CHECK(rads[1].normalizer.order() == 12);
  // every reported class passes the fixed point O_p(N_G(Q)) = Q; spot-check
  for (const auto& rc : rads)
    CHECK(p_core(rc.normalizer, 2).same_group(rc.subgroup));
}

TEST_CASE("radical subgroups of S4 at p = 2 are V4 and D8") {
  PermutationGroup s4 = make(4, {"(1,2)", "(1,2,3,4)"});
  auto rads = radical_subgroups(s4, 2);
  CHECK(radical_orders(rads) == std::vector<uint64_t>{4, 8});
  // O_2(S4) = V4 is the unique minimal radical and is contained in both
  PermutationGroup o2 = p_core(s4, 2);
  for (const auto& rc : rads) CHECK(rc.subgroup.contains_group(o2));
}

TEST_CASE("weights of A5 at p = 2") {
  PermutationGroup a5 = make(5, {"(1,2,3)", "(1,2,3,4,5)"});
  WeightClassSet w = enumerate_weights(a5, 2, default_table_provider());
  CHECK(w.count() == 4);
  // 1 weight from Q = 1 (the degree-4 character), 3 from Q = V4 (N/Q = C3)
  REQUIRE(w.radicals.size() == 2);
  CHECK(w.dz_rows[0].size() == 1);
  CHECK(w.local_tables[0].degree(w.dz_rows[0][0]) == 4);
  CHECK(w.dz_rows[1].size() == 3);
  CHECK(w.radicals[1].local->quotient().order() == 3);
}

TEST_CASE("weights of a p-group: single class from the trivial quotient") {
  PermutationGroup q8 = make(8, {"(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"});
  WeightClassSet w = enumerate_weights(q8, 2, default_table_provider());
  CHECK(w.count() == 1);
  CHECK(w.classes[0].local_degree == 1);
}

TEST_CASE("p-regular class counts") {
  PermutationGroup a5 = make(5, {"(1,2,3)", "(1,2,3,4,5)"});
  ClassData cd = conjugacy_classes(a5);
  CHECK(p_regular_class_count(cd, 2) == 4);
  CHECK(p_regular_class_count(cd, 3) == 4);
  CHECK(p_regular_class_count(cd, 5) == 3);
  PermutationGroup d8 = make(4, {"(1,2,3,4)", "(1,3)"});
  CHECK(p_regular_class_count(conjugacy_classes(d8), 2) == 1);
}

TEST_CASE("awc counts for the solvable suite agree with the brute-force oracle") {
  struct Case { const char* name; uint32_t deg; std::vector<const char*> gens; };
  for (const Case& c : std::vector<Case>{
           {"S3", 3, {"(1,2)", "(1,2,3)"}},
           {"S4", 4, {"(1,2)", "(1,2,3,4)"}},
           {"A4", 4, {"(1,2,3)", "(2,3,4)"}},
           {"D8", 4, {"(1,2,3,4)", "(1,3)"}},
           {"Q8", 8, {"(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"}}}) {
    std::vector<Permutation> gens;
    for (const char* s : c.gens) gens.push_back(Permutation::from_cycles(s, c.deg));
    PermutationGroup G = PermutationGroup::from_generators(c.deg, gens);
    ClassData cd = conjugacy_classes(G);
    for (uint64_t p : {2ull, 3ull}) {
      if (!mpz_divisible_ui_p(G.order().get_mpz_t(), p)) continue;
      WeightClassSet w = enumerate_weights(G, p, default_table_provider());
      AwcReport r = awc_count_check(cd, w, p);
      INFO(c.name << " at p = " << p);
      CHECK(r.equal);
      auto brute = wftest::brute_weights(c.deg, gens, p);
      CHECK(brute.weight_class_count == r.weight_class_count);
      CHECK(brute.radical_class_count == w.radicals.size());
    }
  }
}

TEST_CASE("awc counts: frozen values for S4, A5, J1") {
  GroupFile s4 = load_atlas_group("S4");
  ClassData cd4 = conjugacy_classes(*s4.group);
  WeightClassSet w4 = enumerate_weights(*s4.group, 2, default_table_provider());
  AwcReport r4 = awc_count_check(cd4, w4, 2);
  CHECK(r4.ibr_count == 2);
  CHECK(r4.weight_class_count == 2);
  CHECK(r4.equal);

  GroupFile a5 = load_atlas_group("A5");
  WeightClassSet w5 = enumerate_weights(*a5.group, 2, default_table_provider());
  AwcReport r5 = awc_count_check(conjugacy_classes(*a5.group), w5, 2);
  CHECK(r5.ibr_count == 4);
  CHECK(r5.equal);
}

TEST_CASE("weight classing is invariant under conjugated generating sets") {
  PermutationGroup a5 = make(5, {"(1,2,3)", "(1,2,3,4,5)"});
  Permutation c = Permutation::from_cycles("(1,4)(2,5)", 5);  // even, relabels points
  std::vector<Permutation> conj_gens;
  for (const auto& g : a5.generators()) conj_gens.push_back(g.conjugated_by(c));
  PermutationGroup a5b = PermutationGroup::from_generators(5, conj_gens);
  WeightClassSet w1 = enumerate_weights(a5, 2, default_table_provider());
  WeightClassSet w2 = enumerate_weights(a5b, 2, default_table_provider());
  CHECK(w1.count() == w2.count());
  auto signature = [](const WeightClassSet& w) {
    std::vector<std::pair<uint64_t, uint64_t>> s;
    for (const auto& wc : w.classes)
      s.emplace_back(w.radicals[wc.radical_class].subgroup.order().get_ui(),
                     wc.local_degree.get_ui());
    std::sort(s.begin(), s.end());
    return s;
  };
  CHECK(signature(w1) == signature(w2));
}

TEST_CASE("for p not dividing |G| the weights are (1, chi) over all of Irr") {
  PermutationGroup s3 = make(3, {"(1,2)", "(1,2,3)"});
  ClassData cd = conjugacy_classes(s3);
  WeightClassSet w = enumerate_weights(s3, 5, default_table_provider());
  REQUIRE(w.radicals.size() == 1);
  CHECK(w.radicals[0].subgroup.is_trivial());
  CHECK(w.count() == cd.class_count());
  CHECK(awc_count_check(cd, w, 5).equal);
}

TEST_CASE("central p'-quotient: radical class counts agree (G vs G/Z)") {
  // pairs (G, Z): Z central of p'-order; Rad(G) <-> Rad(G/Z) classwise
  struct Pair { const char* atlas; const char* zgen; uint64_t p; };
  for (const Pair& c : std::vector<Pair>{
           {"SL2(3)", "center", 3},
           {"SL2(5)", "center", 3},
           {"SL2(5)", "center", 5},
           {"2xA5", "(1,2)", 3},
           {"2xA5", "(1,2)", 5},
           {"C6", "(3,4,5)", 2}}) {
    GroupFile gf = load_atlas_group(c.atlas);
    PermutationGroup Z;
    if (std::string(c.zgen) == "center") {
      // the unique central involution of SL2(q)
      Permutation minus_one(gf.group->degree());
      ClassData cd = conjugacy_classes(*gf.group);
      for (const auto& cls : cd.classes)
        if (cls.element_order == 2 && cls.size == 1) minus_one = cls.representative;
      Z = PermutationGroup::from_generators(gf.group->degree(), {minus_one});
    } else {
      Z = PermutationGroup::from_generators(gf.group->degree(),
                                            {Permutation::from_cycles(c.zgen, gf.group->degree())});
    }
    REQUIRE(Z.order() > 1);
    QuotientMap qm(*gf.group, Z);
    auto rads_g = radical_subgroups(*gf.group, c.p);
    auto rads_q = radical_subgroups(qm.quotient(), c.p);
    INFO(c.atlas << " at p = " << c.p);
    CHECK(rads_g.size() == rads_q.size());
    // S -> SZ/Z maps class representatives to radicals of G/Z, bijectively
    std::vector<bool> used(rads_q.size(), false);
    for (const auto& rg : rads_g) {
      std::vector<Permutation> proj_gens;
      for (const auto& x : rg.subgroup.generators()) proj_gens.push_back(qm.project(x));
      PermutationGroup image =
          PermutationGroup::from_generators(qm.quotient().degree(), proj_gens);
      bool matched = false;
      for (size_t i = 0; i < rads_q.size(); ++i) {
        if (used[i]) continue;
        if (is_conjugate_subgroup(qm.quotient(), image, rads_q[i].subgroup)) {
          used[i] = true;
          matched = true;
          break;
        }
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("normal p-core case: every radical contains O_p(G), counts match the quotient") {
  struct Pair { const char* atlas; uint64_t p; };
  for (const Pair& c : std::vector<Pair>{{"S4", 2}, {"A4", 2}, {"SL2(3)", 2}, {"D8", 2}, {"Q8", 2}}) {
    GroupFile gf = load_atlas_group(c.atlas);
    PermutationGroup Z = p_core(*gf.group, c.p);
    REQUIRE(Z.order() > 1);
    auto rads_g = radical_subgroups(*gf.group, c.p);
    for (const auto& rc : rads_g) CHECK(rc.subgroup.contains_group(Z));
    QuotientMap qm(*gf.group, Z);
    auto rads_q = radical_subgroups(qm.quotient(), c.p);
    INFO(c.atlas);
    CHECK(rads_g.size() == rads_q.size());
  }
}

TEST_CASE("radical enumeration reports a resource error instead of truncating") {
  GroupFile j1 = load_atlas_group("J1");
  WeightsLimits lim;
  lim.max_sylow_order = 4;
  CHECK_THROWS_AS(radical_subgroups(*j1.group, 2, lim), ResourceError);
}

TEST_CASE("a failing local table surfaces as a dependency error naming the quotient") {
  GroupFile j1 = load_atlas_group("J1");
  TableProvider never = [](std::shared_ptr<const PermutationGroup>,
                           std::shared_ptr<const ClassData>) -> CharacterTable {
    throw ResourceError("table source unavailable");
  };
  try {
    enumerate_weights(*j1.group, 2, never);
    FAIL("expected a dependency error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("local quotient") != std::string::npos);
  }
}

TEST_CASE("J1 at p = 2: radicals 1, C2, (C2)^3 and eleven weight classes") {
  GroupFile j1 = load_atlas_group("J1");
  auto entry = find_atlas_entry("J1");
  REQUIRE(entry.has_value());
  nlohmann::json tj = read_json_file(atlas_directory() + "/" + entry->table_file);
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*j1.group));

  TableProvider provider = [&](std::shared_ptr<const PermutationGroup> H,
                               std::shared_ptr<const ClassData> hcd) -> CharacterTable {
    if (H->same_group(*j1.group)) return table_from_json(tj, H, hcd);
    return compute_character_table(H, hcd);
  };
  WeightClassSet w = enumerate_weights(*j1.group, 2, provider);
  CHECK(radical_orders(w.radicals) == std::vector<uint64_t>{1, 2, 8});
  REQUIRE(w.radicals.size() == 3);
  CHECK(w.dz_rows[0].size() == 5);  // dz(J1)
  CHECK(w.dz_rows[1].size() == 1);  // N/Q = A5-like local with one dz character
  CHECK(w.dz_rows[2].size() == 5);  // N/Q of order 21
  CHECK(w.radicals[1].normalizer.order() == 120);
  CHECK(w.radicals[2].normalizer.order() == 168);
  CHECK(w.radicals[2].local->quotient().order() == 21);
  CHECK(w.count() == 11);
  CHECK(awc_count_check(*cd, w, 2).equal);
}
