#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "weightforge/actions.hpp"

namespace weightforge {

struct OrbitTypeReport {
  std::map<uint64_t, uint64_t> orbits_of_length;  // length -> count
  uint64_t total() const;
  std::string summary() const;  // e.g. "9 x len-1, 1 x len-2"
};

/// Orbit type of a cyclic action of order gamma_order on `total` points from
/// the fixed-point counts of its powers: fixed_by_power[d] = #fixed points of
/// gamma^d, for every divisor d of gamma_order. Moebius inversion; an
/// inconsistent vector (negative orbit count) raises ValidationError.
OrbitTypeReport cyclic_orbit_types(uint64_t total, uint64_t gamma_order,
                                   const std::map<uint64_t, uint64_t>& fixed_by_power);

enum class Verdict { kVerified, kConsistent, kRefutedCount, kRefutedFixedPoints };
std::string verdict_name(Verdict v);

struct IsoResult {
  Verdict verdict = Verdict::kRefutedCount;
  std::string detail;
  OrbitTypeReport orbits_x, orbits_y;  // filled when the joint image is computed
  // per joint-group element: fixed counts on each side
  std::vector<std::pair<uint64_t, uint64_t>> fixed_counts;
};

/// Decides Gamma-set isomorphism between two actions of the same generator
/// list. VERIFIED compares stabilizer-class multisets (marks); when the
/// IBr side carries only bridge-level guarantees and the joint image is not
/// cyclic, equal fixed counts yield CONSISTENT.
IsoResult gamma_set_isomorphic(const ActionTable& x, const ActionTable& y);

struct BijectionCertificate {
  std::vector<std::pair<std::string, std::string>> pairs;  // x label -> y label
  std::string verdict;
};

/// An explicit equivariant pairing; emission re-verifies the compatibility
/// identity pairing(w^a) = pairing(w)^a for every generator. Requires a
/// VERIFIED result.
BijectionCertificate build_bijection(const ActionTable& x, const ActionTable& y,
                                     const IsoResult& iso);

nlohmann::json certificate_json(const BijectionCertificate& cert, const ActionTable& x,
                                const IsoResult& iso, const std::string& group, uint64_t p);

}  // namespace weightforge
