#include "weightforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "weightforge/errors.hpp"

namespace weightforge {

Permutation::Permutation(uint32_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (uint32_t v : images) {
    if (v >= images.size() || seen[v])
      throw InputError("generator image array is not a bijection of {1..n}");
    seen[v] = true;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(const std::string& text, uint32_t degree) {
  Permutation p(degree);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<uint32_t> cyc;
    while (true) {
      skip_ws();
      size_t start = i;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw InputError("cycle notation: expected point number in \"" + text + "\"");
      unsigned long v = std::stoul(text.substr(start, i - start));
      if (v < 1 || v > degree)
        throw InputError("cycle notation: point " + std::to_string(v) + " outside 1.." +
                         std::to_string(degree));
      cyc.push_back(static_cast<uint32_t>(v - 1));
      skip_ws();
      if (i < text.size() && (text[i] == ',' || text[i] == ' ')) { ++i; continue; }
      if (i < text.size() && text[i] == ')') { ++i; break; }
      throw InputError("cycle notation: expected ',' or ')' in \"" + text + "\"");
    }
    for (size_t k = 0; k < cyc.size(); ++k) {
      uint32_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (p.images_[from] != from)
        throw InputError("cycle notation: point " + std::to_string(from + 1) + " repeated");
      p.images_[from] = to;
    }
    skip_ws();
  }
  std::vector<bool> seen(degree, false);
  for (uint32_t v : p.images_) {
    if (seen[v]) throw InputError("cycle notation: cycles are not disjoint");
    seen[v] = true;
  }
  return p;
}

bool Permutation::is_identity() const {
  for (uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  Permutation r;
  r.images_.resize(images_.size());
  for (uint32_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (uint32_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = i;
  return r;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  // (g^-1 * this * g)(x) = g(this(g^-1(x))); computed without forming g^-1.
  Permutation r;
  r.images_.resize(images_.size());
  for (uint32_t i = 0; i < images_.size(); ++i) r.images_[g.images_[i]] = g.images_[images_[i]];
  return r;
}

Permutation Permutation::power(uint64_t k) const {
  Permutation acc(degree());
  Permutation base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

uint64_t Permutation::order() const {
  uint64_t ord = 1;
  std::vector<bool> seen(images_.size(), false);
  for (uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    for (uint32_t j = i; !seen[j]; j = images_[j]) { seen[j] = true; ++len; }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<std::vector<uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<uint32_t>> out;
  std::vector<bool> seen(images_.size(), false);
  for (uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) { seen[i] = true; continue; }
    std::vector<uint32_t> cyc;
    for (uint32_t j = i; !seen[j]; j = images_[j]) { seen[j] = true; cyc.push_back(j); }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

size_t PermHash::operator()(const std::vector<uint32_t>& v) const {
  uint64_t h = 1469598103934665603ULL;
  for (uint32_t x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<size_t>(h);
}

size_t PermHash::operator()(const Permutation& p) const { return (*this)(p.images()); }

}  // namespace weightforge
