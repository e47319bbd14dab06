#include "weightforge/weights.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "weightforge/errors.hpp"

namespace weightforge {

namespace {

// All subgroups of the p-group P, as sorted element lists, by bottom-up
// cyclic extension: every subgroup of order p^k sits above a normal subgroup
// of order p^{k-1}, so adding p-th-power-compatible elements of P reaches
// everything.
std::vector<std::vector<Permutation>> all_subgroups_of_p_group(const PermutationGroup& P,
                                                               uint64_t p, uint64_t cap) {
  if (P.order() > cap)
    throw ResourceError("radical enumeration: Sylow subgroup order " + P.order().get_str() +
                        " exceeds the configured bound " + std::to_string(cap));
  std::vector<Permutation> elements = P.elements(cap);
  std::sort(elements.begin(), elements.end());

  using ElemSet = std::vector<Permutation>;  // sorted
  auto closure = [&](ElemSet seed) {
    std::set<Permutation> s(seed.begin(), seed.end());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Permutation> cur(s.begin(), s.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (s.insert(a * b).second) grew = true;
    }
    return ElemSet(s.begin(), s.end());
  };

  std::set<ElemSet> seen;
  std::vector<ElemSet> frontier;
  ElemSet triv{Permutation(P.degree())};
  seen.insert(triv);
  frontier.push_back(triv);
  std::vector<ElemSet> all{triv};
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const ElemSet& H : frontier) {
      std::set<Permutation> hset(H.begin(), H.end());
      for (const Permutation& g : elements) {
        if (hset.count(g)) continue;
        if (!hset.count(g.power(p))) continue;
        // g must normalize H for <H, g> to have order p|H|
        bool normalizes = true;
        for (const Permutation& h : H)
          if (!hset.count(h.conjugated_by(g))) { normalizes = false; break; }
        if (!normalizes) continue;
        ElemSet seed = H;
        seed.push_back(g);
        ElemSet K = closure(std::move(seed));
        if (K.size() != H.size() * p) continue;
        if (seen.insert(K).second) {
          next.push_back(K);
          all.push_back(std::move(K));
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

PermutationGroup group_from_elements(uint32_t degree, const std::vector<Permutation>& elems) {
  return PermutationGroup::from_generators(degree, elems);
}

}  // namespace

std::vector<RadicalClass> radical_subgroups(const PermutationGroup& G, uint64_t p,
                                            const WeightsLimits& limits) {
  PermutationGroup P = sylow_subgroup(G, p);
  std::vector<std::vector<Permutation>> subs =
      all_subgroups_of_p_group(P, p, limits.max_sylow_order);

  // dedupe under G-conjugacy inside invariant buckets (order, order multiset)
  std::vector<PermutationGroup> reps;
  {
    std::map<std::vector<uint64_t>, std::vector<PermutationGroup>> buckets;
    for (const auto& elems : subs) {
      PermutationGroup H = group_from_elements(G.degree(), elems);
      std::vector<uint64_t> key{H.order().get_ui()};
      std::map<uint64_t, uint64_t> order_mult;
      for (const auto& e : elems) ++order_mult[e.order()];
      for (auto [o, c] : order_mult) { key.push_back(o); key.push_back(c); }
      auto& bucket = buckets[key];
      bool fresh = true;
      for (const auto& seenH : bucket)
        if (is_conjugate_subgroup(G, seenH, H)) { fresh = false; break; }
      if (fresh) bucket.push_back(std::move(H));
    }
    for (auto& [key, bucket] : buckets)
      for (auto& H : bucket) reps.push_back(std::move(H));
  }

  std::vector<RadicalClass> out;
  for (PermutationGroup& Q : reps) {
    PermutationGroup N = normalizer(G, Q);
    if (!p_core(N, p).same_group(Q)) continue;
    RadicalClass rc;
    rc.subgroup = std::move(Q);
    rc.normalizer = std::move(N);
    out.push_back(std::move(rc));
  }

  // the definitional fixed point, re-verified on the final list
  for (const RadicalClass& rc : out) {
    PermutationGroup n2 = normalizer(G, rc.subgroup);
    if (!p_core(n2, p).same_group(rc.subgroup))
      throw InternalError("radical_subgroups: fixed-point re-verification failed");
  }

  // O_p(G) is the unique minimal radical and must be present
  PermutationGroup opg = p_core(G, p);
  bool has_min = false;
  for (const RadicalClass& rc : out)
    if (rc.subgroup.same_group(opg)) has_min = true;
  if (!has_min) throw InternalError("radical_subgroups: O_p(G) missing from the class list");

  for (RadicalClass& rc : out) rc.abelian_invariants = abelian_invariants(rc.subgroup);
  std::sort(out.begin(), out.end(), [](const RadicalClass& a, const RadicalClass& b) {
    if (a.subgroup.order() != b.subgroup.order()) return a.subgroup.order() < b.subgroup.order();
    if (a.abelian_invariants != b.abelian_invariants)
      return a.abelian_invariants < b.abelian_invariants;
    if (a.normalizer.order() != b.normalizer.order())
      return a.normalizer.order() > b.normalizer.order();
    return false;
  });
  for (uint32_t i = 0; i < out.size(); ++i) {
    out[i].id = i;
    out[i].local = std::make_shared<QuotientMap>(out[i].normalizer, out[i].subgroup);
  }
  return out;
}

TableProvider default_table_provider(const TableOptions& opts) {
  return [opts](std::shared_ptr<const PermutationGroup> H, std::shared_ptr<const ClassData> cd) {
    return compute_character_table(std::move(H), std::move(cd), opts);
  };
}

WeightClassSet enumerate_weights(const PermutationGroup& G, uint64_t p,
                                 const TableProvider& provider, const WeightsLimits& limits) {
  WeightClassSet w;
  w.p = p;
  w.radicals = radical_subgroups(G, p, limits);
  for (const RadicalClass& rc : w.radicals) {
    auto H = std::make_shared<PermutationGroup>(rc.local->quotient());
    auto cd = std::make_shared<ClassData>(conjugacy_classes(*H));
    CharacterTable t = [&] {
      try {
        return provider(H, cd);
      } catch (const std::exception& e) {
        throw ResourceError("no character table for the local quotient N_G(Q)/Q of order " +
                            H->order().get_str() + " at the radical class with |Q| = " +
                            rc.subgroup.order().get_str() + ": " + e.what());
      }
    }();
    std::vector<uint32_t> dz = defect_zero(t, p);
    for (uint32_t row : dz) {
      WeightClass wc;
      wc.radical_class = rc.id;
      wc.local_char = row;
      wc.local_degree = t.degree(row);
      w.classes.push_back(std::move(wc));
    }
    w.local_tables.push_back(std::move(t));
    w.dz_rows.push_back(std::move(dz));
  }
  return w;
}

uint64_t p_regular_class_count(const ClassData& cd, uint64_t p) {
  uint64_t n = 0;
  for (const auto& c : cd.classes)
    if (c.element_order % p != 0) ++n;
  return n;
}

AwcReport awc_count_check(const ClassData& cd, const WeightClassSet& w, uint64_t p) {
  AwcReport r;
  r.ibr_count = p_regular_class_count(cd, p);
  r.weight_class_count = w.count();
  r.equal = r.ibr_count == r.weight_class_count;
  return r;
}

nlohmann::json weight_report_json(const WeightClassSet& w) {
  nlohmann::json radicals = nlohmann::json::array();
  for (const RadicalClass& rc : w.radicals) {
    nlohmann::json dz_degrees = nlohmann::json::array();
    for (uint32_t row : w.dz_rows[rc.id])
      dz_degrees.push_back(w.local_tables[rc.id].degree(row).get_str());
    radicals.push_back({{"Q_order", rc.subgroup.order().get_str()},
                        {"Q_abelian_invariants", rc.abelian_invariants},
                        {"normalizer_order", rc.normalizer.order().get_str()},
                        {"local_quotient_order", rc.local->quotient().order().get_str()},
                        {"dz_degrees", dz_degrees},
                        {"weight_classes", w.dz_rows[rc.id].size()}});
  }
  return {{"prime", w.p},
          {"radical_classes", radicals},
          {"total_weight_classes", w.count()}};
}

}  // namespace weightforge
