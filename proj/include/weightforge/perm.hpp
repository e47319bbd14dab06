#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace weightforge {

/// A permutation of {0, ..., n-1}, stored as its image array. External text
/// formats are 1-based; everything in memory is 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(uint32_t degree);  // identity

  /// Validates that `images` is a bijection; throws InputError otherwise.
  static Permutation from_images(std::vector<uint32_t> images);

  /// Parses disjoint-cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
  static Permutation from_cycles(const std::string& text, uint32_t degree);

  uint32_t degree() const { return static_cast<uint32_t>(images_.size()); }
  uint32_t operator[](uint32_t point) const { return images_[point]; }
  const std::vector<uint32_t>& images() const { return images_; }

  bool is_identity() const;
  uint64_t order() const;

  /// (a * b)(x) = b(a(x)): a acts first. Matches the right-action convention
  /// x^(ab) = (x^a)^b used throughout.
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  /// this^g = g^-1 * this * g
  Permutation conjugated_by(const Permutation& g) const;
  Permutation power(uint64_t k) const;

  std::vector<std::vector<uint32_t>> cycles() const;  // nontrivial cycles, 0-based
  std::string cycle_string() const;                   // 1-based text form

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<uint32_t> images_;
};

struct PermHash {
  size_t operator()(const Permutation& p) const;
  size_t operator()(const std::vector<uint32_t>& v) const;
};

}  // namespace weightforge
