#pragma once

#include <stdexcept>
#include <string>

namespace weightforge {

// Malformed user input (bad generator arrays, unreadable files, bad flags).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Preconditions on mathematical arguments (g not in G, H not a subgroup, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Loaded data failed an exact invariant (orthogonality, class data mismatch).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource bound was exceeded; never a silently truncated result.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An invariant the implementation guarantees was violated: always a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace weightforge
