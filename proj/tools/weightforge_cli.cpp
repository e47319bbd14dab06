#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "weightforge/errors.hpp"
#include "weightforge/runner.hpp"

using namespace weightforge;

int main(int argc, char** argv) {
  CLI::App app{"weightforge: weights, blocks and Galois actions of finite permutation groups"};
  app.require_subcommand(1);

  JobSpec job;
  std::vector<std::string> checks;

  CLI::App* run_cmd = app.add_subcommand("run", "run checks on one group");
  run_cmd->add_option("--atlas", job.atlas_name, "bundled group name (see `list`)");
  run_cmd->add_option("--group", job.group_file, "group file (JSON)");
  run_cmd->add_option("--table", job.table_file, "validated character table file (JSON)");
  run_cmd->add_option("--prime,-p", job.prime, "the prime p")->required();
  run_cmd->add_option("--check", checks,
                     "checks to run: table | blocks | weights | awc | gaw | orbits (repeatable)");
  run_cmd->add_option("--galois", job.galois_t, "Galois exponent t for sigma_p^t (default 1)");
  run_cmd->add_option("--aut", job.aut_files, "automorphism file(s) (JSON, repeatable)");
  run_cmd->add_option("--out", job.out_path, "write the JSON report to this path");
  run_cmd->add_option("--max-order", job.max_order, "deterministic class enumeration bound");
  run_cmd->add_option("--max-classes", job.max_classes, "in-process table computation bound");
  run_cmd->add_option("--threads", job.threads, "run independent checks concurrently");

  CLI::App* list_cmd = app.add_subcommand("list", "list the bundled atlas groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const AtlasEntry& e : atlas_index()) {
        GroupFile g = load_atlas_group(e.name);  // validates on load
        std::printf("%-10s degree %-4u order %-10s %s\n", e.name.c_str(), g.group->degree(),
                    g.group->order().get_str().c_str(), e.notes.c_str());
      }
      return 0;
    }
    for (const std::string& c : checks) job.checks.insert(c);
    RunResult r = run(job);
    if (job.out_path.empty()) std::cout << r.report.dump(2) << "\n";
    return r.exit_code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
