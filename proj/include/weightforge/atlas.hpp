#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weightforge/perm_group.hpp"

namespace weightforge {

struct GroupFile {
  std::string name;
  std::shared_ptr<const PermutationGroup> group;
};

/// Parses { "name", "degree", "generators" }; generator entries are either
/// 1-based image arrays or cycle-notation strings.
GroupFile parse_group_json(const nlohmann::json& j);
GroupFile load_group_file(const std::string& path);

/// Resolution order for the fixture directory: WEIGHTFORGE_ATLAS, then the
/// build-time data directory.
std::string atlas_directory();

struct AtlasEntry {
  std::string name;
  std::string file;
  std::string table_file;  // optional companion validated table
  std::string notes;
};

std::vector<AtlasEntry> atlas_index();
/// Loads an atlas group by name; validates on load. Unknown name -> InputError.
GroupFile load_atlas_group(const std::string& name);
std::optional<AtlasEntry> find_atlas_entry(const std::string& name);

nlohmann::json read_json_file(const std::string& path);

}  // namespace weightforge
