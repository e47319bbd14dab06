#include "weightforge/character_table.hpp"

#include <algorithm>

#include "weightforge/errors.hpp"
#include "weightforge/residue_field.hpp"

namespace weightforge {

mpz_class CharacterTable::degree(uint32_t row) const {
  auto r = values[row][0].rational();
  if (!r || r->get_den() != 1)
    throw InternalError("character degree is not a rational integer");
  return r->get_num();
}

uint32_t CharacterTable::trivial_row() const {
  for (uint32_t r = 0; r < rows(); ++r) {
    bool all_one = true;
    for (const auto& v : values[r])
      if (!(v == Cyclotomic(1))) { all_one = false; break; }
    if (all_one) return r;
  }
  throw InternalError("table has no trivial character row");
}

void CharacterTable::validate() const {
  const uint32_t n = classes->class_count();
  if (values.size() != n)
    throw ValidationError("table validation: row count " + std::to_string(values.size()) +
                          " != class count " + std::to_string(n));
  for (const auto& row : values)
    if (row.size() != n) throw ValidationError("table validation: ragged value matrix");

  mpz_class degsum = 0;
  for (uint32_t r = 0; r < n; ++r) {
    auto d = values[r][0].rational();
    if (!d || d->get_den() != 1 || d->get_num() <= 0)
      throw ValidationError("table validation: chi_" + std::to_string(r + 1) +
                            "(1) is not a positive integer");
    if (!mpz_divisible_p(order().get_mpz_t(), d->get_num().get_mpz_t()))
      throw ValidationError("table validation: chi_" + std::to_string(r + 1) +
                            "(1) does not divide |G|");
    degsum += d->get_num() * d->get_num();
  }
  if (degsum != order())
    throw ValidationError("table validation: sum of squared degrees " + degsum.get_str() +
                          " != |G| = " + order().get_str());

  // row orthogonality, exact: sum_k |C_k| chi(g_k) conj(psi(g_k)) = |G| delta
  for (uint32_t r = 0; r < n; ++r)
    for (uint32_t s = r; s < n; ++s) {
      Cyclotomic acc;
      for (uint32_t k = 0; k < n; ++k) {
        mpq_class sz(classes->classes[k].size);
        acc += values[r][k] * values[s][inverse_classes[k]] * sz;
      }
      Cyclotomic expected = r == s ? Cyclotomic(mpq_class(order())) : Cyclotomic();
      if (!(acc == expected))
        throw ValidationError("table validation: row orthogonality failed for (chi_" +
                              std::to_string(r + 1) + ", chi_" + std::to_string(s + 1) + ")");
    }

  // power map sanity: identity class maps to itself, orders are consistent
  for (const auto& [q, pm] : power_maps) {
    if (pm.size() != n) throw ValidationError("table validation: power map size mismatch");
    for (uint32_t k = 0; k < n; ++k) {
      uint64_t ord = classes->classes[k].element_order;
      uint64_t expected = ord / std::gcd(ord, q);
      if (classes->classes[pm[k]].element_order != expected)
        throw ValidationError("table validation: power map p" + std::to_string(q) +
                              " inconsistent at class " + std::to_string(k + 1));
    }
  }
}

std::vector<uint32_t> defect_zero(const CharacterTable& t, uint64_t p) {
  unsigned long gval = t.group->p_valuation(p);
  std::vector<uint32_t> out;
  for (uint32_t r = 0; r < t.rows(); ++r) {
    mpz_class d = t.degree(r);
    mpz_class rem;
    unsigned long dval = mpz_remove(rem.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
    if (dval == gval) out.push_back(r);
  }
  return out;
}

Cyclotomic central_character_value(const CharacterTable& t, uint32_t row, uint32_t cls) {
  mpq_class scale(t.classes->classes[cls].size);
  scale /= mpq_class(t.degree(row));
  Cyclotomic w = t.values[row][cls] * scale;
  if (!w.is_integral())
    throw InternalError("central character value is not an algebraic integer");
  return w;
}

std::vector<Block> block_partition(const CharacterTable& t, uint64_t p) {
  const uint32_t n = t.rows();
  uint64_t exp = t.exponent;
  uint64_t n_prime = exp;
  while (n_prime % p == 0) n_prime /= p;
  ResidueField F(p, n_prime);

  std::map<std::vector<ResidueField::Elem>, std::vector<uint32_t>> buckets;
  for (uint32_t r = 0; r < n; ++r) {
    std::vector<ResidueField::Elem> key;
    key.reserve(n);
    for (uint32_t k = 0; k < n; ++k) key.push_back(F.reduce(central_character_value(t, r, k)));
    buckets[key].push_back(r);
  }

  unsigned long gval = t.group->p_valuation(p);
  std::vector<Block> blocks;
  for (auto& [key, rows] : buckets) {
    Block b;
    b.chars = rows;
    unsigned long minval = gval;
    for (uint32_t r : rows) {
      mpz_class d = t.degree(r);
      mpz_class rem;
      unsigned long dv = mpz_remove(rem.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
      minval = std::min(minval, dv);
    }
    b.defect = static_cast<uint32_t>(gval - minval);
    blocks.push_back(std::move(b));
  }
  uint32_t triv = t.trivial_row();
  for (Block& b : blocks)
    b.principal = std::find(b.chars.begin(), b.chars.end(), triv) != b.chars.end();
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.defect != b.defect) return a.defect < b.defect;
    return a.chars.front() < b.chars.front();
  });

  // sanity: partition, principal defect
  size_t covered = 0;
  for (const Block& b : blocks) covered += b.chars.size();
  if (covered != n) throw InternalError("block partition does not cover the table rows");
  for (const Block& b : blocks)
    if (b.principal && b.defect != gval)
      throw InternalError("principal block defect differs from nu_p(|G|)");
  return blocks;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json cyclotomic_to_json(const Cyclotomic& v) {
  uint64_t n = v.conductor();
  nlohmann::json coeffs = nlohmann::json::array();
  for (const mpq_class& c : v.power_basis(n))
    coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  return {{"conductor", n}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Cyclotomic(mpq_class(j.get<long>()));
  if (j.is_string()) {
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return Cyclotomic(q);
  }
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw InputError("cyclotomic value: expected integer, string, or {conductor, coeffs}");
  uint64_t n = j.at("conductor").get<uint64_t>();
  std::vector<mpq_class> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (c.is_array() && c.size() == 2)
      coeffs.emplace_back(mpq_class(c[0].get<std::string>()) /
                          mpq_class(c[1].get<std::string>()));
    else if (c.is_number_integer())
      coeffs.emplace_back(c.get<long>());
    else
      throw InputError("cyclotomic value: bad coefficient entry");
  }
  if (coeffs.size() != n) throw InputError("cyclotomic value: coeffs length != conductor");
  return Cyclotomic::from_power_basis(n, coeffs);
}

nlohmann::json table_to_json(const CharacterTable& t, const std::string& group_name) {
  nlohmann::json j;
  j["group"] = group_name;
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : t.classes->classes)
    classes.push_back({{"order", c.element_order}, {"size", c.size.get_str()}});
  j["classes"] = classes;
  nlohmann::json pm;
  for (const auto& [q, m] : t.power_maps) pm[std::to_string(q)] = m;
  j["power_maps"] = pm;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.values) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) {
      auto q = v.rational();
      if (q && q->get_den() == 1)
        r.push_back(q->get_num().get_str());
      else
        r.push_back(cyclotomic_to_json(v));
    }
    rows.push_back(std::move(r));
  }
  j["values"] = rows;
  return j;
}

CharacterTable table_from_json(const nlohmann::json& j,
                               std::shared_ptr<const PermutationGroup> G,
                               std::shared_ptr<const ClassData> cd) {
  CharacterTable t;
  t.group = std::move(G);
  t.classes = std::move(cd);
  const uint32_t n = t.classes->class_count();

  const auto& jc = j.at("classes");
  if (jc.size() != n)
    throw ValidationError("table file: class count " + std::to_string(jc.size()) +
                          " does not match the group's " + std::to_string(n));
  for (uint32_t k = 0; k < n; ++k) {
    uint64_t ord = jc[k].at("order").get<uint64_t>();
    mpz_class size(jc[k].at("size").is_string() ? jc[k].at("size").get<std::string>()
                                                : std::to_string(jc[k].at("size").get<long>()));
    if (ord != t.classes->classes[k].element_order || size != t.classes->classes[k].size)
      throw ValidationError("table file: class " + std::to_string(k + 1) +
                            " (order,size) does not match the computed class data");
  }

  t.exponent = t.classes->exponent();
  for (const auto& [qs, m] : j.at("power_maps").items()) {
    uint64_t q = std::stoull(qs);
    std::vector<uint32_t> pm = m.get<std::vector<uint32_t>>();
    t.power_maps[q] = std::move(pm);
  }
  // power maps must agree with maps recomputed from the group
  for (uint64_t q = 2; q <= t.exponent; ++q) {
    if (t.exponent % q != 0) continue;
    bool is_prime = true;
    for (uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) { is_prime = false; break; }
    if (!is_prime) continue;
    std::vector<uint32_t> pm(n);
    for (uint32_t k = 0; k < n; ++k)
      pm[k] = class_of(*t.group, *t.classes, t.classes->classes[k].representative.power(q));
    auto it = t.power_maps.find(q);
    if (it == t.power_maps.end())
      throw ValidationError("table file: missing power map for prime " + std::to_string(q));
    if (it->second != pm)
      throw ValidationError("table file: power map for prime " + std::to_string(q) +
                            " does not match the group");
  }

  for (const auto& row : j.at("values")) {
    std::vector<Cyclotomic> r;
    for (const auto& v : row) r.push_back(cyclotomic_from_json(v));
    t.values.push_back(std::move(r));
  }

  t.inverse_classes.resize(n);
  for (uint32_t k = 0; k < n; ++k)
    t.inverse_classes[k] =
        class_of(*t.group, *t.classes, t.classes->classes[k].representative.inverse());

  t.validate();
  return t;
}

}  // namespace weightforge
