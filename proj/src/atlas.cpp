#include "weightforge/atlas.hpp"

#include <cstdlib>
#include <fstream>

#include "weightforge/errors.hpp"

#ifndef WEIGHTFORGE_SOURCE_ATLAS_DIR
#define WEIGHTFORGE_SOURCE_ATLAS_DIR ""
#endif

namespace weightforge {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("failed to parse JSON from " + path + ": " + e.what());
  }
  return j;
}

GroupFile parse_group_json(const nlohmann::json& j) {
  GroupFile g;
  g.name = j.value("name", "unnamed");
  uint32_t degree = j.at("degree").get<uint32_t>();
  std::vector<Permutation> gens;
  for (const auto& entry : j.at("generators")) {
    if (entry.is_string()) {
      gens.push_back(Permutation::from_cycles(entry.get<std::string>(), degree));
    } else if (entry.is_array()) {
      std::vector<uint32_t> img;
      for (const auto& v : entry) {
        uint32_t x = v.get<uint32_t>();
        if (x < 1 || x > degree)
          throw InputError("group file: image point " + std::to_string(x) + " outside 1.." +
                           std::to_string(degree));
        img.push_back(x - 1);
      }
      if (img.size() != degree)
        throw InputError("group file: generator image array has wrong length");
      gens.push_back(Permutation::from_images(std::move(img)));
    } else {
      throw InputError("group file: generator entries must be arrays or cycle strings");
    }
  }
  g.group = std::make_shared<PermutationGroup>(PermutationGroup::from_generators(degree, gens));
  return g;
}

GroupFile load_group_file(const std::string& path) {
  return parse_group_json(read_json_file(path));
}

std::string atlas_directory() {
  if (const char* env = std::getenv("WEIGHTFORGE_ATLAS"); env && *env) return env;
  return WEIGHTFORGE_SOURCE_ATLAS_DIR;
}

std::vector<AtlasEntry> atlas_index() {
  std::string dir = atlas_directory();
  nlohmann::json j = read_json_file(dir + "/index.json");
  std::vector<AtlasEntry> out;
  for (const auto& e : j.at("groups")) {
    AtlasEntry a;
    a.name = e.at("name").get<std::string>();
    a.file = e.at("file").get<std::string>();
    a.table_file = e.value("table", "");
    a.notes = e.value("notes", "");
    out.push_back(std::move(a));
  }
  return out;
}

std::optional<AtlasEntry> find_atlas_entry(const std::string& name) {
  for (const AtlasEntry& e : atlas_index())
    if (e.name == name) return e;
  return std::nullopt;
}

GroupFile load_atlas_group(const std::string& name) {
  auto e = find_atlas_entry(name);
  if (!e) throw InputError("unknown atlas group \"" + name + "\"; see `weightforge list`");
  GroupFile g = load_group_file(atlas_directory() + "/" + e->file);
  g.name = e->name;
  return g;
}

}  // namespace weightforge
