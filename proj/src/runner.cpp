#include "weightforge/runner.hpp"

#include <chrono>
#include <fstream>
#include <atomic>
#include <future>

#include "weightforge/blocks_bridge.hpp"
#include "weightforge/equivcheck.hpp"
#include "weightforge/errors.hpp"

namespace weightforge {

std::string content_digest(const nlohmann::json& j) {
  std::string s = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[19];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::set<std::string> expand_checks(std::set<std::string> checks) {
  static const std::set<std::string> known{"table", "blocks", "weights", "awc", "gaw", "orbits"};
  for (const auto& c : checks)
    if (!known.count(c)) throw InputError("unknown check \"" + c + "\"");
  if (checks.empty()) checks.insert("awc");
  if (checks.count("gaw")) { checks.insert("awc"); checks.insert("weights"); }
  if (checks.count("awc")) checks.insert("weights");
  if (checks.count("blocks")) checks.insert("weights");  // dz <-> weights pairing
  return checks;
}

// Lazily computed shared state for one run.
struct Context {
  JobSpec job;
  GroupFile gf;
  nlohmann::json table_fixture;  // null when absent

  std::shared_ptr<const ClassData> cd;
  std::optional<CharacterTable> table;
  bool table_was_computed = false;
  std::optional<WeightClassSet> weights;
  std::optional<std::vector<Block>> blocks;
  std::vector<AutomorphismSpec> auts;
  std::optional<GaloisElement> galois;

  const ClassData& classes() {
    if (!cd) {
      ClassOptions co;
      co.deterministic_limit = job.max_order;
      if (gf.group->order() > static_cast<unsigned long>(job.max_order) * 100)
        throw ResourceError("group order " + gf.group->order().get_str() +
                            " exceeds the configured limit");
      cd = std::make_shared<ClassData>(conjugacy_classes(*gf.group, co));
    }
    return *cd;
  }

  const CharacterTable& group_table(bool force_compute) {
    if (table && (!force_compute || table_was_computed)) return *table;
    classes();
    TableOptions topts;
    topts.max_classes = job.max_classes;
    if (!table_fixture.is_null() && !force_compute) {
      table = table_from_json(table_fixture, gf.group, cd);
      table_was_computed = false;
    } else {
      table = compute_character_table(gf.group, cd, topts);
      table_was_computed = true;
      if (!table_fixture.is_null()) {
        // both routes available: the fixture must agree with the computation
        CharacterTable loaded = table_from_json(table_fixture, gf.group, cd);
        if (loaded.values != table->values)
          throw ValidationError("computed table disagrees with the supplied table file");
      }
    }
    return *table;
  }

  const WeightClassSet& weight_set() {
    if (!weights) {
      classes();
      TableOptions topts;
      topts.max_classes = job.max_classes;
      WeightsLimits lim;
      lim.max_sylow_order = job.max_sylow_order;
      auto provider = [this, topts](std::shared_ptr<const PermutationGroup> H,
                                    std::shared_ptr<const ClassData> hcd) -> CharacterTable {
        if (H->same_group(*gf.group)) {
          // the local quotient at Q = 1 is the group itself: serve its table
          CharacterTable t = group_table(false);
          if (t.group.get() != H.get()) {
            // rebind onto the caller's handles; the class data is identical
            CharacterTable r = t;
            r.group = H;
            r.classes = hcd;
            return r;
          }
          return t;
        }
        return compute_character_table(std::move(H), std::move(hcd), topts);
      };
      weights = enumerate_weights(*gf.group, job.prime, provider, lim);
    }
    return *weights;
  }

  const std::vector<Block>& block_list() {
    if (!blocks) blocks = block_partition(group_table(false), job.prime);
    return *blocks;
  }
};

nlohmann::json table_section(Context& ctx, bool force_compute) {
  const CharacterTable& t = ctx.group_table(force_compute);
  nlohmann::json degrees = nlohmann::json::array();
  for (uint32_t r = 0; r < t.rows(); ++r) degrees.push_back(t.degree(r).get_str());
  nlohmann::json classes = nlohmann::json::array();
  auto labels = class_labels(*ctx.cd);
  for (uint32_t k = 0; k < ctx.cd->class_count(); ++k)
    classes.push_back({{"label", labels[k]},
                       {"order", ctx.cd->classes[k].element_order},
                       {"size", ctx.cd->classes[k].size.get_str()},
                       {"centralizer_order", ctx.cd->classes[k].centralizer_order.get_str()}});
  return {{"class_count", ctx.cd->class_count()},
          {"classes", classes},
          {"degrees", degrees},
          {"computed_in_process", ctx.table_was_computed},
          {"table", table_to_json(t, ctx.gf.name)}};
}

nlohmann::json weights_section(Context& ctx) {
  return weight_report_json(ctx.weight_set());
}

nlohmann::json awc_section(Context& ctx, std::atomic<bool>& refuted) {
  AwcReport r = awc_count_check(ctx.classes(), ctx.weight_set(), ctx.job.prime);
  if (!r.equal) refuted = true;
  return {{"ibr_count", r.ibr_count},
          {"weight_class_count", r.weight_class_count},
          {"equal", r.equal}};
}

nlohmann::json blocks_section(Context& ctx) {
  const auto& blocks = ctx.block_list();
  nlohmann::json j = blocks_json(ctx.group_table(false), blocks, ctx.job.prime);
  DefectZeroPairing pairing =
      blocks_of_defect_zero_as_weights(ctx.group_table(false), blocks, ctx.weight_set());
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [b, wi] : pairing.pairs)
    pairs.push_back({"B" + std::to_string(b + 1), "W" + std::to_string(wi + 1)});
  j["defect_zero_weight_pairing"] = pairs;
  if (ctx.galois || !ctx.auts.empty()) {
    BlockActionView v =
        block_action(ctx.group_table(false), blocks, ctx.galois, ctx.auts);
    nlohmann::json acts;
    for (size_t g = 0; g < v.generator_names.size(); ++g) {
      nlohmann::json moved = nlohmann::json::array();
      for (uint32_t b = 0; b < v.labels.size(); ++b)
        if (v.gen_images[g][b] != b)
          moved.push_back({v.labels[b], v.labels[v.gen_images[g][b]]});
      acts[v.generator_names[g]] = moved;
    }
    j["block_action"] = acts;
  }
  return j;
}

nlohmann::json action_table_json(const ActionTable& at) {
  nlohmann::json gens;
  for (size_t g = 0; g < at.generator_names.size(); ++g) {
    nlohmann::json orbits = nlohmann::json::array();
    std::vector<bool> seen(at.size(), false);
    for (uint32_t x = 0; x < at.size(); ++x) {
      if (seen[x]) continue;
      nlohmann::json orbit = nlohmann::json::array();
      uint32_t y = x;
      do {
        seen[y] = true;
        orbit.push_back(at.labels[y]);
        y = at.gen_images[g][y];
      } while (y != x);
      orbits.push_back(std::move(orbit));
    }
    gens[at.generator_names[g]] = orbits;
  }
  return {{"labels", at.labels},
          {"generators", gens},
          {"guarantee", at.guarantee == ActionTable::Guarantee::kExplicit
                            ? "exact_up_to_isomorphism"
                            : "fixed_counts_only"}};
}

nlohmann::json orbits_section(Context& ctx) {
  const CharacterTable& t = ctx.group_table(false);
  ActionTable at;
  for (uint32_t r = 0; r < t.rows(); ++r)
    at.labels.push_back("chi_" + std::to_string(r + 1) + "(deg " + t.degree(r).get_str() + ")");
  if (ctx.galois) {
    at.generator_names.push_back("sigma_" + std::to_string(ctx.galois->p) +
                                 (ctx.galois->t == 1 ? "" : "^" + std::to_string(ctx.galois->t)));
    at.gen_images.push_back(galois_on_character(t, ctx.galois->p, ctx.galois->t));
  }
  for (const AutomorphismSpec& a : ctx.auts) {
    at.generator_names.push_back("aut:" + a.name());
    at.gen_images.push_back(aut_on_character(t, a));
  }
  at.check_consistent();
  return action_table_json(at);
}

nlohmann::json gaw_section(Context& ctx, std::atomic<bool>& refuted) {
  ActionTable wact = action_on_weights(*ctx.gf.group, ctx.weight_set(), ctx.galois, ctx.auts);
  ActionTable iact = ibr_profile(*ctx.gf.group, ctx.classes(), ctx.job.prime, ctx.galois, ctx.auts);
  IsoResult iso = gamma_set_isomorphic(wact, iact);
  nlohmann::json j;
  j["weight_action"] = action_table_json(wact);
  j["ibr_profile"] = action_table_json(iact);
  j["verdict"] = verdict_name(iso.verdict);
  j["detail"] = iso.detail;
  j["orbit_type_weights"] = iso.orbits_x.summary();
  j["orbit_type_ibr"] = iso.orbits_y.summary();
  if (iso.verdict == Verdict::kVerified) {
    BijectionCertificate cert = build_bijection(wact, iact, iso);
    j["certificate"] = certificate_json(cert, wact, iso, ctx.gf.name, ctx.job.prime);
  }
  if (iso.verdict == Verdict::kRefutedCount || iso.verdict == Verdict::kRefutedFixedPoints)
    refuted = true;
  return j;
}

}  // namespace

RunResult run(const JobSpec& job) {
  auto t_start = std::chrono::steady_clock::now();
  if (job.atlas_name.empty() == job.group_file.empty())
    throw InputError("exactly one of --atlas and --group must be given");
  if (!is_prime_u64(job.prime)) throw InputError("p = " + std::to_string(job.prime) + " is not prime");

  Context ctx;
  ctx.job = job;
  std::string table_path = job.table_file;
  if (!job.atlas_name.empty()) {
    ctx.gf = load_atlas_group(job.atlas_name);
    if (table_path.empty()) {
      auto entry = find_atlas_entry(job.atlas_name);
      if (entry && !entry->table_file.empty())
        table_path = atlas_directory() + "/" + entry->table_file;
    }
  } else {
    ctx.gf = load_group_file(job.group_file);
  }
  if (!table_path.empty()) ctx.table_fixture = read_json_file(table_path);

  std::set<std::string> checks = expand_checks(job.checks);
  bool needs_gamma = checks.count("gaw") || checks.count("orbits") || checks.count("blocks");
  if (needs_gamma) {
    ctx.classes();
    ctx.galois = make_galois(ctx.cd->exponent(), job.prime, job.galois_t);
    for (const std::string& path : job.aut_files) {
      nlohmann::json aj = read_json_file(path);
      for (const auto& m : aj.at("maps")) {
        std::vector<Permutation> images;
        for (const auto& arr : m.at("generator_images")) {
          std::vector<uint32_t> img;
          for (const auto& v : arr) img.push_back(v.get<uint32_t>() - 1);
          images.push_back(Permutation::from_images(std::move(img)));
        }
        ctx.auts.emplace_back(m.at("name").get<std::string>(), *ctx.gf.group, std::move(images));
      }
    }
  }

  nlohmann::json input_echo{{"group", ctx.gf.name},
                            {"prime", job.prime},
                            {"checks", std::vector<std::string>(checks.begin(), checks.end())},
                            {"galois_t", job.galois_t},
                            {"degree", ctx.gf.group->degree()},
                            {"order", ctx.gf.group->order().get_str()}};
  nlohmann::json report;
  report["tool"] = {{"name", "weightforge"}, {"version", "1.0.0"}};
  nlohmann::json gens_echo = nlohmann::json::array();
  for (const auto& g : ctx.gf.group->generators()) gens_echo.push_back(g.cycle_string());
  input_echo["digest"] = content_digest(gens_echo);
  report["input"] = input_echo;

  std::atomic<bool> refuted{false};
  nlohmann::json sections;

  // independent sections may run concurrently; assembly stays sequential and
  // deterministic in the fixed map order
  std::map<std::string, std::function<nlohmann::json()>> tasks;
  if (checks.count("table")) tasks["table"] = [&] { return table_section(ctx, true); };
  if (checks.count("weights")) tasks["weights"] = [&] { return weights_section(ctx); };
  if (checks.count("awc")) tasks["awc"] = [&] { return awc_section(ctx, refuted); };
  if (checks.count("blocks")) tasks["blocks"] = [&] { return blocks_section(ctx); };
  if (checks.count("orbits")) tasks["orbits"] = [&] { return orbits_section(ctx); };
  if (checks.count("gaw")) tasks["gaw"] = [&] { return gaw_section(ctx, refuted); };

  if (job.threads > 1) {
    // shared lazy state is not synchronized: prime every dependency first,
    // after which the section builders are pure readers
    ctx.classes();
    if (checks.count("weights") || checks.count("awc") || checks.count("blocks") ||
        checks.count("gaw"))
      ctx.weight_set();
    if (checks.count("blocks") || checks.count("orbits")) ctx.group_table(false);
    if (checks.count("blocks")) ctx.block_list();
    if (checks.count("table")) ctx.group_table(true);
    std::map<std::string, std::future<nlohmann::json>> futures;
    for (auto& [name, fn] : tasks)
      futures[name] = std::async(std::launch::async, fn);
    for (auto& [name, fut] : futures) sections[name] = fut.get();
  } else {
    for (auto& [name, fn] : tasks) sections[name] = fn();
  }

  report["checks"] = sections;
  auto t_end = std::chrono::steady_clock::now();
  report["timing"] = {
      {"total_seconds", std::chrono::duration<double>(t_end - t_start).count()}};

  RunResult rr;
  rr.report = report;
  rr.exit_code = refuted ? 1 : 0;
  if (!job.out_path.empty()) {
    std::ofstream out(job.out_path);
    if (!out) throw InputError("cannot write report to " + job.out_path);
    out << report.dump(2) << "\n";
  }
  return rr;
}

}  // namespace weightforge
