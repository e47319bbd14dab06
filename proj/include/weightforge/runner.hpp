#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "weightforge/atlas.hpp"

namespace weightforge {

/// One tool invocation. Checks are auto-expanded to a dependency-closed set;
/// exit codes: 0 ok, 1 refuted verdict, 2 input error, 3 resource limit.
struct JobSpec {
  std::string atlas_name;             // exactly one of atlas_name / group_file
  std::string group_file;
  std::string table_file;             // optional validated table for the group
  uint64_t prime = 2;
  std::set<std::string> checks;       // table | blocks | weights | awc | gaw | orbits
  uint64_t galois_t = 1;
  std::vector<std::string> aut_files;
  std::string out_path;
  uint64_t max_order = 1000000;
  uint32_t max_classes = 40;
  uint64_t max_sylow_order = 4096;
  uint32_t threads = 1;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

RunResult run(const JobSpec& job);

/// FNV-1a digest of canonicalized input JSON, for the report's input echo.
std::string content_digest(const nlohmann::json& j);

}  // namespace weightforge
