#pragma once

#include <stdexcept>
#include <string>

namespace ddc {

// An input violates one of the documented admissibility constraints or
// operation preconditions. The message names the violated constraint.
class ConstraintError : public std::invalid_argument {
 public:
  explicit ConstraintError(const std::string& what) : std::invalid_argument(what) {}
};

// A search is too large for exact enumeration accounting (distinct from any
// mathematical outcome; no certificate is produced when this is raised).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// The code detected it is inconsistent with itself (e.g. a structural check
// that a proved statement guarantees has failed). Always a bug, never data.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ddc
