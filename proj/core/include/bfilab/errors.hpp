#ifndef BFILAB_ERRORS_HPP
#define BFILAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bfilab {

// Thrown when a computation would exceed the configured sieve/memory budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant that should hold by construction fails
// (e.g. a cache checksum mismatch). The message names the invariant.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bfilab

#endif  // BFILAB_ERRORS_HPP
