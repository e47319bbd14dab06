// Regenerates the bundled data: atlas group files (including the degree-266
// J1 generators derived from its 7-dimensional F11 matrix representation),
// the validated J1 character table, automorphism fixtures, and the golden
// reports. Everything written here is certified by the library's own checks
// (group orders, class sums, table orthogonality) rather than trusted.
#include <array>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "weightforge/atlas.hpp"
#include "weightforge/errors.hpp"
#include "weightforge/character_table.hpp"
#include "weightforge/runner.hpp"

using namespace weightforge;
using nlohmann::json;

namespace {

json perm_group_json(const std::string& name, uint32_t degree,
                     const std::vector<std::vector<uint32_t>>& images_1based) {
  json gens = json::array();
  for (const auto& img : images_1based) gens.push_back(img);
  return {{"name", name}, {"degree", degree}, {"generators", gens}};
}

std::vector<uint32_t> one_based(const Permutation& p) {
  std::vector<uint32_t> v(p.degree());
  for (uint32_t i = 0; i < p.degree(); ++i) v[i] = p[i] + 1;
  return v;
}

json cycles_group_json(const std::string& name, uint32_t degree,
                       const std::vector<std::string>& cycles) {
  std::vector<std::vector<uint32_t>> imgs;
  for (const auto& c : cycles) imgs.push_back(one_based(Permutation::from_cycles(c, degree)));
  return perm_group_json(name, degree, imgs);
}

// SL2(q) acting on the nonzero row vectors of F_q^2
json sl2_group_json(const std::string& name, uint32_t q) {
  std::vector<std::pair<uint32_t, uint32_t>> pts;
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t b = 0; b < q; ++b)
      if (a || b) pts.emplace_back(a, b);
  auto index_of = [&](uint32_t a, uint32_t b) {
    for (uint32_t i = 0; i < pts.size(); ++i)
      if (pts[i] == std::make_pair(a, b)) return i;
    throw InternalError("sl2 point lookup");
  };
  auto act = [&](std::array<uint32_t, 4> m) {
    std::vector<uint32_t> img(pts.size());
    for (uint32_t i = 0; i < pts.size(); ++i) {
      auto [a, b] = pts[i];
      uint32_t a2 = (a * m[0] + b * m[2]) % q, b2 = (a * m[1] + b * m[3]) % q;
      img[i] = index_of(a2, b2) + 1;
    }
    return img;
  };
  return perm_group_json(name, static_cast<uint32_t>(pts.size()),
                         {act({1, 1, 0, 1}), act({0, q - 1, 1, 0})});
}

// PSL2(q) on the projective line {0..q-1, infinity}
json psl2_group_json(const std::string& name, uint32_t q) {
  uint32_t inf = q;  // point index q = infinity
  auto inv = [&](uint32_t x) {
    for (uint32_t y = 1; y < q; ++y)
      if (x * y % q == 1) return y;
    throw InternalError("psl2 inverse");
  };
  std::vector<uint32_t> shift(q + 1), flip(q + 1);
  for (uint32_t x = 0; x < q; ++x) shift[x] = (x + 1) % q + 1;
  shift[inf] = inf + 1;
  for (uint32_t x = 1; x < q; ++x) flip[x] = (q - inv(x)) % q + 1;
  flip[0] = inf + 1;
  flip[inf] = 0 + 1;
  return perm_group_json(name, q + 1, {shift, flip});
}

// ---------------------------------------------------------------------------
// J1 from its 7x7 matrices over F11

using Mat7 = std::array<uint8_t, 49>;

Mat7 mat_mul(const Mat7& a, const Mat7& b) {
  Mat7 c{};
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) {
      int aik = a[i * 7 + k];
      if (!aik) continue;
      for (int j = 0; j < 7; ++j)
        c[i * 7 + j] = static_cast<uint8_t>((c[i * 7 + j] + aik * b[k * 7 + j]) % 11);
    }
  return c;
}

Mat7 mat_identity() {
  Mat7 m{};
  for (int i = 0; i < 7; ++i) m[i * 7 + i] = 1;
  return m;
}

struct Mat7Hash {
  size_t operator()(const Mat7& m) const {
    uint64_t h = 1469598103934665603ULL;
    for (uint8_t v : m) { h ^= v; h *= 1099511628211ULL; }
    return static_cast<size_t>(h);
  }
};

int mat_order(const Mat7& m) {
  Mat7 p = m;
  int o = 1;
  while (!(p == mat_identity())) {
    p = mat_mul(p, m);
    if (++o > 100000) return -1;
  }
  return o;
}

std::vector<Mat7> mat_closure(const std::vector<Mat7>& gens, size_t cap) {
  std::unordered_set<Mat7, Mat7Hash> seen;
  std::vector<Mat7> out;
  std::deque<Mat7> q;
  seen.insert(mat_identity());
  out.push_back(mat_identity());
  q.push_back(mat_identity());
  while (!q.empty()) {
    Mat7 x = q.front();
    q.pop_front();
    for (const Mat7& g : gens) {
      Mat7 y = mat_mul(x, g);
      if (seen.insert(y).second) {
        out.push_back(y);
        if (out.size() > cap) return out;
        q.push_back(y);
      }
    }
  }
  return out;
}

json j1_group_json() {
  Mat7 Y{}, Z{};
  for (int i = 0; i < 6; ++i) Y[i * 7 + (i + 1)] = 1;
  Y[6 * 7 + 0] = 1;
  const int zrows[7][7] = {{-3, 2, -1, -1, -3, -1, -3}, {-2, 1, 1, 3, 1, 3, 3},
                           {-1, -1, -3, -1, -3, -3, 2}, {-1, -3, -1, -3, -3, 2, -1},
                           {-3, -1, -3, -3, 2, -1, -1}, {1, 3, 3, -2, 1, 1, 3},
                           {3, 3, -2, 1, 1, 3, 1}};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) Z[i * 7 + j] = static_cast<uint8_t>((zrows[i][j] % 11 + 11) % 11);

  std::vector<Mat7> G = mat_closure({Y, Z}, 200000);
  if (G.size() != 175560) throw InternalError("J1 matrix closure has wrong order");

  // index-266 subgroup: <x, t> of order 660 with x of order 11, t an involution
  Mat7 x11{};
  for (const Mat7& g : G)
    if (mat_order(g) == 11) { x11 = g; break; }
  std::vector<Mat7> H;
  for (const Mat7& g : G) {
    if (mat_order(g) != 2) continue;
    std::vector<Mat7> S = mat_closure({x11, g}, 661);
    if (S.size() == 660) { H = S; break; }
  }
  if (H.size() != 660) throw InternalError("no order-660 subgroup found");

  auto coset_key = [&H](const Mat7& g) {
    Mat7 best = mat_mul(H[0], g);
    for (size_t i = 1; i < H.size(); ++i) best = std::min(best, mat_mul(H[i], g));
    return best;
  };
  std::unordered_map<Mat7, uint32_t, Mat7Hash> coset_index;
  std::vector<Mat7> reps{mat_identity()};
  coset_index.emplace(coset_key(mat_identity()), 0);
  std::vector<Mat7> gens{Y, Z};
  for (size_t i = 0; i < reps.size(); ++i)
    for (const Mat7& g : gens) {
      Mat7 t = mat_mul(reps[i], g);
      Mat7 key = coset_key(t);
      if (coset_index.emplace(key, static_cast<uint32_t>(reps.size())).second)
        reps.push_back(t);
    }
  if (reps.size() != 266) throw InternalError("J1 coset count is not 266");

  std::vector<std::vector<uint32_t>> images;
  for (const Mat7& g : gens) {
    std::vector<uint32_t> img(reps.size());
    for (uint32_t i = 0; i < reps.size(); ++i)
      img[i] = coset_index.at(coset_key(mat_mul(reps[i], g))) + 1;
    images.push_back(std::move(img));
  }
  return perm_group_json("J1", 266, images);
}

void write_json(const std::string& path, const json& j, int indent = 1) {
  std::ofstream f(path);
  f << j.dump(indent) << "\n";
  std::printf("wrote %s\n", path.c_str());
}

void write_atlas(const std::string& dir) {
  std::filesystem::create_directories(dir);
  struct Item { std::string name, file, table, notes; json data; };
  std::vector<Item> items;
  auto add = [&](const std::string& name, const std::string& file, json data,
                 const std::string& notes, const std::string& table = "") {
    items.push_back({name, file, table, notes, std::move(data)});
  };

  add("C2", "c2.json", cycles_group_json("C2", 2, {"(1,2)"}), "cyclic of order 2");
  add("C3", "c3.json", cycles_group_json("C3", 3, {"(1,2,3)"}), "cyclic of order 3");
  add("C6", "c6.json", cycles_group_json("C6", 5, {"(1,2)(3,4,5)"}), "cyclic of order 6");
  add("S3", "s3.json", cycles_group_json("S3", 3, {"(1,2)", "(1,2,3)"}), "symmetric on 3 points");
  add("S4", "s4.json", cycles_group_json("S4", 4, {"(1,2)", "(1,2,3,4)"}), "symmetric on 4 points");
  add("A4", "a4.json", cycles_group_json("A4", 4, {"(1,2,3)", "(2,3,4)"}), "alternating on 4 points");
  add("A5", "a5.json", cycles_group_json("A5", 5, {"(1,2,3)", "(1,2,3,4,5)"}),
      "alternating on 5 points");
  add("D8", "d8.json", cycles_group_json("D8", 4, {"(1,2,3,4)", "(1,3)"}), "dihedral of order 8");
  add("Q8", "q8.json", cycles_group_json("Q8", 8, {"(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"}),
      "quaternion of order 8, regular action");
  add("SL2(3)", "sl2_3.json", sl2_group_json("SL2(3)", 3), "SL(2,3) on the 8 nonzero vectors");
  add("SL2(5)", "sl2_5.json", sl2_group_json("SL2(5)", 5), "SL(2,5) on the 24 nonzero vectors");
  add("PSL2(7)", "psl2_7.json", psl2_group_json("PSL2(7)", 7), "PSL(2,7) on the projective line");
  add("C7:C3", "c7c3.json",
      cycles_group_json("C7:C3", 7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}),
      "Frobenius group of order 21");
  add("2xA5", "c2xa5.json", cycles_group_json("2xA5", 7, {"(1,2)", "(3,4,5)", "(3,4,5,6,7)"}),
      "direct product C2 x A5");
  add("J1", "j1.json", j1_group_json(),
      "first Janko group on 266 points; generators derived from the 7-dimensional F11 matrix "
      "representation and certified by the order 175560 = 2^3*3*5*7*11*19",
      "j1_table.json");

  json index;
  index["groups"] = json::array();
  for (const Item& it : items) {
    write_json(dir + "/" + it.file, it.data);
    json e{{"name", it.name}, {"file", it.file}, {"notes", it.notes}};
    if (!it.table.empty()) e["table"] = it.table;
    index["groups"].push_back(e);
  }
  write_json(dir + "/index.json", index);

  // A5 automorphism: conjugation by a transposition of S5 (outer on A5)
  {
    uint32_t deg = 5;
    Permutation s = Permutation::from_cycles("(1,2)", deg);
    json maps = json::array();
    json imgs = json::array();
    for (const char* c : {"(1,2,3)", "(1,2,3,4,5)"}) {
      Permutation g = Permutation::from_cycles(c, deg);
      imgs.push_back(one_based(g.conjugated_by(s)));
    }
    maps.push_back({{"name", "transposition"}, {"generator_images", imgs}});
    write_json(dir + "/a5_aut.json", json{{"group", "A5"}, {"maps", maps}});
  }
}

void write_j1_table(const std::string& dir) {
  GroupFile g = load_atlas_group("J1");
  auto cd = std::make_shared<ClassData>(conjugacy_classes(*g.group));
  CharacterTable t = compute_character_table(g.group, cd);
  write_json(dir + "/j1_table.json", table_to_json(t, "J1"));
}

void write_goldens(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const AtlasEntry& e : atlas_index()) {
    JobSpec job;
    job.atlas_name = e.name;
    GroupFile g = load_atlas_group(e.name);
    // smallest prime divisor of |G|
    uint64_t p = 2;
    while (!mpz_divisible_ui_p(g.group->order().get_mpz_t(), p)) ++p;
    job.prime = p;
    job.checks = {"awc", "weights"};
    if (e.name == "J1") job.checks = {"gaw", "blocks"};
    if (e.name == "C7:C3") job.checks = {"orbits"};
    RunResult r = run(job);
    r.report.erase("timing");
    std::string fname = e.file.substr(0, e.file.size() - 5) + "_report.json";
    write_json(dir + "/" + fname, r.report, 2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string what = argc > 1 ? argv[1] : "all";
  std::string atlas_dir = atlas_directory();
  try {
    if (what == "atlas" || what == "all") write_atlas(atlas_dir);
    if (what == "j1-table" || what == "all") write_j1_table(atlas_dir);
    if (what == "goldens" || what == "all") {
      std::string golden = atlas_dir + "/../golden";
      write_goldens(golden);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fixture generation failed: %s\n", e.what());
    return 1;
  }
  return 0;
}
