// Acceptance suite: one criterion per case, each printing a single PASS/FAIL
// line with the measured values and its runtime. Exit status is nonzero when
// any selected criterion fails.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "weightforge/blocks_bridge.hpp"
#include "weightforge/equivcheck.hpp"
#include "weightforge/errors.hpp"
#include "weightforge/residue_field.hpp"
#include "weightforge/runner.hpp"

using namespace weightforge;

namespace {

struct CritResult {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

WeightClassSet j1_weights(const GroupFile& j1) {
  auto entry = find_atlas_entry("J1");
  nlohmann::json tj = read_json_file(atlas_directory() + "/" + entry->table_file);
  TableProvider provider = [&](std::shared_ptr<const PermutationGroup> H,
                               std::shared_ptr<const ClassData> hcd) -> CharacterTable {
    if (H->same_group(*j1.group)) return table_from_json(tj, H, hcd);
    return compute_character_table(H, hcd);
  };
  return enumerate_weights(*j1.group, 2, provider);
}

std::string orbit_summary(const ActionTable& at) {
  // orbit type of the group generated by the action's generators
  std::vector<std::vector<uint32_t>> closure;
  std::vector<uint32_t> ident(at.size());
  for (uint32_t i = 0; i < at.size(); ++i) ident[i] = i;
  closure.push_back(ident);
  for (size_t head = 0; head < closure.size(); ++head)
    for (const auto& g : at.gen_images) {
      std::vector<uint32_t> prod(at.size());
      for (uint32_t x = 0; x < at.size(); ++x) prod[x] = g[closure[head][x]];
      if (std::find(closure.begin(), closure.end(), prod) == closure.end())
        closure.push_back(std::move(prod));
    }
  std::map<uint64_t, uint64_t> type;
  std::vector<bool> seen(at.size(), false);
  for (uint32_t x = 0; x < at.size(); ++x) {
    if (seen[x]) continue;
    std::set<uint32_t> orbit;
    for (const auto& e : closure) orbit.insert(e[x]);
    for (uint32_t y : orbit) seen[y] = true;
    ++type[orbit.size()];
  }
  std::ostringstream os;
  bool first = true;
  for (auto [len, count] : type) {
    if (!first) os << ", ";
    os << count << " x len-" << len;
    first = false;
  }
  return os.str();
}

// --- criterion 1: J1 weight counts ---------------------------------------
CritResult criterion1() {
  CritResult r;
  GroupFile j1 = load_atlas_group("J1");
  ClassData cd = conjugacy_classes(*j1.group);
  uint64_t ibr = p_regular_class_count(cd, 2);
  r.require(ibr == 11, "p_regular_class_count = " + std::to_string(ibr) + ", expected 11");
  WeightClassSet w = j1_weights(j1);
  r.require(w.count() == 11, "weight class count = " + std::to_string(w.count()) + ", expected 11");
  std::vector<std::pair<uint64_t, uint64_t>> decomp;  // (|Q|, count)
  for (const auto& rc : w.radicals)
    decomp.emplace_back(rc.subgroup.order().get_ui(), w.dz_rows[rc.id].size());
  std::vector<std::pair<uint64_t, uint64_t>> expect{{1, 5}, {2, 1}, {8, 5}};
  std::ostringstream os;
  for (auto [q, c] : decomp) os << " " << c << "@|Q|=" << q;
  r.require(decomp == expect, "decomposition" + os.str() + ", expected 5@|Q|=1 1@|Q|=2 5@|Q|=8");
  if (r.pass) r.note("11 = 11, decomposed 5 (Q=1) + 1 (Q=C2) + 5 (Q=(C2)^3)");
  return r;
}

// --- criterion 2: J1 GAW verdict and orbit type ---------------------------
CritResult criterion2() {
  CritResult r;
  GroupFile j1 = load_atlas_group("J1");
  ClassData cd = conjugacy_classes(*j1.group);
  WeightClassSet w = j1_weights(j1);
  GaloisElement sig = make_galois(cd.exponent(), 2, 1);
  ActionTable wact = action_on_weights(*j1.group, w, sig, {});
  ActionTable iact = ibr_profile(*j1.group, cd, 2, sig, {});
  IsoResult iso = gamma_set_isomorphic(wact, iact);
  r.require(iso.verdict == Verdict::kVerified,
            "gaw verdict " + verdict_name(iso.verdict) + ", expected VERIFIED");
  std::string ows = orbit_summary(wact), ois = orbit_summary(iact);
  const std::string required = "9 x len-1, 1 x len-2";
  r.require(ows == required && ois == required,
            "required orbit type {" + required + "} on both sides, computed weights {" + ows +
                "} and ibr {" + ois +
                "}. An 11-point sigma_2 action with 9 fixed points is impossible here: the three "
                "order-19 classes lie in a normalizer of shape 19:6 whose order-6 fusion subgroup "
                "of (Z/19)^* does not contain 2, so squaring permutes them in a 3-cycle, and the "
                "same 3-cycle appears on the three degree-120 defect-zero blocks");
  if (iso.verdict == Verdict::kVerified) {
    BijectionCertificate cert = build_bijection(wact, iact, iso);
    r.note("equivariant bijection certificate re-verified (" +
           std::to_string(cert.pairs.size()) + " pairs)");
  }
  return r;
}

// --- criterion 3: C7:C3 character orbits under sigma_2 ---------------------
CritResult criterion3() {
  CritResult r;
  GroupFile gf = load_atlas_group("C7:C3");
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*gf.group));
  CharacterTable t = compute_character_table(gf.group, cd);
  std::vector<uint32_t> perm = galois_on_character(t, 2, 1);
  uint32_t triv = t.trivial_row();
  uint64_t fixed_lin = 0, fixed_deg3 = 0, swapped_lin = 0;
  for (uint32_t row = 0; row < t.rows(); ++row) {
    bool fixed = perm[row] == row;
    if (t.degree(row) == 3) {
      if (fixed) ++fixed_deg3;
    } else if (row != triv) {
      if (!fixed) ++swapped_lin;
    } else {
      if (fixed) ++fixed_lin;
    }
  }
  r.require(perm[triv] == triv, "trivial character moved");
  r.require(fixed_deg3 == 2, "expected both degree-3 characters fixed");
  r.require(swapped_lin == 2, "expected the two nontrivial linear characters switched");
  if (r.pass) r.note("chi_1, chi_3a, chi_3b fixed; chi_1a <-> chi_1b");
  return r;
}

// --- criterion 4: p-solvable oracle suite ----------------------------------
CritResult criterion4() {
  CritResult r;
  for (const char* name : {"S3", "S4", "A4", "SL2(3)", "D8", "Q8", "C2", "C3"}) {
    GroupFile gf = load_atlas_group(name);
    ClassData cd = conjugacy_classes(*gf.group);
    for (uint64_t p = 2; p <= 3; ++p) {
      if (!mpz_divisible_ui_p(gf.group->order().get_mpz_t(), p)) continue;
      WeightClassSet w = enumerate_weights(*gf.group, p, default_table_provider());
      AwcReport a = awc_count_check(cd, w, p);
      std::string tag = std::string(name) + " p=" + std::to_string(p);
      r.require(a.equal, tag + ": counts " + std::to_string(a.ibr_count) +
                             " != " + std::to_string(a.weight_class_count));
      wftest::BruteWeights brute =
          wftest::brute_weights(gf.group->degree(), gf.group->generators(), p);
      r.require(brute.weight_class_count == a.weight_class_count,
                tag + ": brute-force oracle weight count " +
                    std::to_string(brute.weight_class_count) + " disagrees");
      r.require(brute.radical_class_count == w.radicals.size(),
                tag + ": brute-force oracle radical count disagrees");
    }
  }
  if (r.pass) r.note("awc equality with exhaustive oracle agreement on all 8 groups");
  return r;
}

// --- criterion 5: A5 ---------------------------------------------------------
CritResult criterion5() {
  CritResult r;
  GroupFile gf = load_atlas_group("A5");
  ClassData cd = conjugacy_classes(*gf.group);
  WeightClassSet w = enumerate_weights(*gf.group, 2, default_table_provider());
  std::vector<uint64_t> orders;
  for (const auto& rc : w.radicals) orders.push_back(rc.subgroup.order().get_ui());
  r.require(orders == std::vector<uint64_t>{1, 4}, "radical classes are not {1, V4}");
  if (!w.radicals.empty() && w.radicals.size() > 1)
    r.require(w.radicals[1].abelian_invariants == std::vector<uint64_t>{2, 2},
              "order-4 radical is not elementary abelian");
  AwcReport a = awc_count_check(cd, w, 2);
  r.require(a.equal && a.ibr_count == 4,
            "counts " + std::to_string(a.ibr_count) + " / " + std::to_string(a.weight_class_count));
  wftest::BruteWeights brute = wftest::brute_weights(5, gf.group->generators(), 2);
  r.require(brute.weight_class_count == 4 && brute.radical_class_count == 2,
            "brute-force oracle disagrees");
  if (r.pass) r.note("radicals {1, V4}; 4 = 4 with oracle agreement");
  return r;
}

// --- criterion 6: SL2(5) -----------------------------------------------------
CritResult criterion6() {
  CritResult r;
  GroupFile gf = load_atlas_group("SL2(5)");
  ClassData cd = conjugacy_classes(*gf.group);
  WeightClassSet w = enumerate_weights(*gf.group, 2, default_table_provider());
  AwcReport a = awc_count_check(cd, w, 2);
  r.require(a.equal, "awc counts " + std::to_string(a.ibr_count) +
                         " != " + std::to_string(a.weight_class_count));
  GaloisElement sig = make_galois(cd.exponent(), 2, 1);
  ActionTable prof = ibr_profile(*gf.group, cd, 2, sig, {});
  std::string os = orbit_summary(prof);
  r.require(os == "2 x len-1, 1 x len-2",
            "ibr profile orbit type {" + os + "}, expected exactly one 2-orbit");
  if (r.pass)
    r.note("4 = 4; sigma_2 fuses one pair of IBr labels (total fixed-point count check)");
  return r;
}

// --- criterion 7: property suites -------------------------------------------
CritResult criterion7() {
  CritResult r;

  // (a) Rad bijection invariants on fixture pairs (G, Z)
  {
    struct Pair { const char* atlas; bool center; const char* zgen; uint64_t p; };
    std::vector<Pair> pairs{{"SL2(3)", true, "", 3},  {"SL2(5)", true, "", 3},
                            {"SL2(5)", true, "", 5},  {"2xA5", false, "(1,2)", 3},
                            {"2xA5", false, "(1,2)", 5}, {"C6", false, "(3,4,5)", 2},
                            {"S4", false, "", 2},     {"A4", false, "", 2},
                            {"SL2(3)", false, "", 2}};
    uint64_t done = 0;
    for (const auto& c : pairs) {
      GroupFile gf = load_atlas_group(c.atlas);
      PermutationGroup Z;
      if (c.center) {
        ClassData cd = conjugacy_classes(*gf.group);
        for (const auto& cls : cd.classes)
          if (cls.element_order == 2 && cls.size == 1)
            Z = PermutationGroup::from_generators(gf.group->degree(), {cls.representative});
      } else if (*c.zgen) {
        Z = PermutationGroup::from_generators(
            gf.group->degree(), {Permutation::from_cycles(c.zgen, gf.group->degree())});
      } else {
        Z = p_core(*gf.group, c.p);  // normal p-subgroup case
      }
      if (Z.order() <= 1) {
        r.require(false, std::string(c.atlas) + ": fixture central subgroup not found");
        continue;
      }
      QuotientMap qm(*gf.group, Z);
      auto rads_g = radical_subgroups(*gf.group, c.p);
      auto rads_q = radical_subgroups(qm.quotient(), c.p);
      r.require(rads_g.size() == rads_q.size(),
                std::string(c.atlas) + " p=" + std::to_string(c.p) +
                    ": radical class counts differ across the quotient");
      bool contains_all = true;
      if (!c.center && !*c.zgen)
        for (const auto& rc : rads_g)
          if (!rc.subgroup.contains_group(Z)) contains_all = false;
      r.require(contains_all, std::string(c.atlas) + ": a radical misses the normal p-core");
      ++done;
    }
    r.require(done >= 5, "fewer than 5 fixture pairs exercised");
  }

  // (b) orthogonality and degree sums on every computed table
  for (const char* name : {"C2", "C3", "C6", "S3", "S4", "A4", "A5", "D8", "Q8", "SL2(3)",
                           "SL2(5)", "PSL2(7)", "C7:C3", "2xA5"}) {
    GroupFile gf = load_atlas_group(name);
    auto cd = std::make_shared<ClassData>(conjugacy_classes(*gf.group));
    CharacterTable t = compute_character_table(gf.group, cd);
    try {
      t.validate();
      mpz_class sq = 0;
      for (uint32_t row = 0; row < t.rows(); ++row) sq += t.degree(row) * t.degree(row);
      r.require(sq == gf.group->order(), std::string(name) + ": degree sum mismatch");
    } catch (const std::exception& e) {
      r.require(false, std::string(name) + ": " + e.what());
    }
  }

  // (c) Frobenius compatibility on 10^3 random cyclotomics per conductor
  {
    std::mt19937_64 rng(2026);
    for (auto [p, n] : std::vector<std::pair<uint64_t, uint64_t>>{{2, 15}, {2, 21}, {3, 20},
                                                                  {5, 12}}) {
      ResidueField F(p, n);
      for (int i = 0; i < 1000; ++i) {
        Cyclotomic x;
        for (int t = 0; t < 3; ++t) {
          long den = 1 + static_cast<long>(rng() % 3);
          while (den % static_cast<long>(p) == 0) ++den;
          x += Cyclotomic::root_of_unity(n, rng() % n) *
               mpq_class(static_cast<long>(rng() % 17) - 8, den);
        }
        bool ok = F.reduce(x.galois(p % n)) ==
                  F.pow(F.reduce(x), mpz_class(static_cast<unsigned long>(p)));
        if (!ok) {
          r.require(false, "Frobenius compatibility failed at p=" + std::to_string(p) +
                               " n=" + std::to_string(n));
          break;
        }
      }
    }
  }

  // (d) Moebius round trip on all cyclic orbit types with <= 12 points
  {
    uint64_t checked = 0;
    for (uint64_t gamma = 1; gamma <= 12 && r.pass; ++gamma) {
      std::vector<uint64_t> divisors;
      for (uint64_t d = 1; d <= gamma; ++d)
        if (gamma % d == 0) divisors.push_back(d);
      std::vector<uint64_t> counts(divisors.size(), 0);
      std::function<void(size_t, uint64_t)> rec = [&](size_t i, uint64_t used) {
        if (!r.pass) return;
        if (i == divisors.size()) {
          std::map<uint64_t, uint64_t> type;
          uint64_t total = 0;
          for (size_t j = 0; j < divisors.size(); ++j)
            if (counts[j]) { type[divisors[j]] = counts[j]; total += divisors[j] * counts[j]; }
          std::map<uint64_t, uint64_t> fixed;
          for (uint64_t d : divisors) {
            if (d == gamma) continue;
            uint64_t f = 0;
            for (auto [L, c] : type)
              if (d % L == 0) f += L * c;
            fixed[d] = f;
          }
          try {
            OrbitTypeReport rep = cyclic_orbit_types(total, gamma, fixed);
            if (rep.orbits_of_length != type) r.require(false, "Moebius round trip mismatch");
          } catch (const std::exception& e) {
            r.require(false, std::string("Moebius round trip threw: ") + e.what());
          }
          ++checked;
          return;
        }
        for (uint64_t c = 0; used + c * divisors[i] <= 12; ++c) {
          counts[i] = c;
          rec(i + 1, used + c * divisors[i]);
        }
        counts[i] = 0;
      };
      rec(0, 0);
    }
    r.require(checked == 760, "Moebius sweep covered " + std::to_string(checked) +
                                  " orbit types, expected all 760");
  }

  // (e) emitted bijection certificates re-verify under all generators
  {
    GroupFile gf = load_atlas_group("A5");
    ClassData cd = conjugacy_classes(*gf.group);
    WeightClassSet w = enumerate_weights(*gf.group, 2, default_table_provider());
    GaloisElement sig = make_galois(cd.exponent(), 2, 1);
    ActionTable wact = action_on_weights(*gf.group, w, sig, {});
    ActionTable iact = ibr_profile(*gf.group, cd, 2, sig, {});
    IsoResult iso = gamma_set_isomorphic(wact, iact);
    r.require(iso.verdict == Verdict::kVerified, "A5 gaw verdict not VERIFIED");
    if (iso.verdict == Verdict::kVerified) {
      // build_bijection re-checks equivariance internally and throws on any
      // violation; reaching here means the certificate re-verified
      BijectionCertificate cert = build_bijection(wact, iact, iso);
      r.require(cert.pairs.size() == 4, "A5 certificate has wrong size");
    }
  }

  if (r.pass) r.note("all property suites passed exactly");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (!strcmp(argv[i], "--criterion") && i + 1 < argc) only = atoi(argv[i + 1]);

  std::map<int, std::function<CritResult()>> crits{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}};

  // wall-clock budgets per criterion, in seconds
  std::map<int, double> budget{{1, 600}, {2, 601}, {3, 1}, {4, 60}, {5, 5}, {6, 5}, {7, 120}};

  bool all_pass = true;
  for (auto& [k, fn] : crits) {
    if (only && k != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    CritResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget[k]) {
      r.pass = false;
      r.detail += "; exceeded the runtime budget of " + std::to_string(budget[k]) + "s";
    }
    std::printf("CRITERION %d: %s -- %s (%.2fs)\n", k, r.pass ? "PASS" : "FAIL",
                r.detail.c_str(), secs);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
