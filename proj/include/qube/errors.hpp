#pragma once

#include <stdexcept>
#include <string>

namespace qube {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A value-level precondition was violated (bad label, bad index, mismatched
// dimensions, non-Hermitian input where Hermitian is required, ...).
class argument_error : public error {
 public:
  explicit argument_error(const std::string& what) : error(what) {}
};

// Subsystem layouts disagree in a structural way (e.g. a permutation maps
// between subsystems of different local dimension).
class layout_error : public error {
 public:
  explicit layout_error(const std::string& what) : error(what) {}
};

// A request would exceed the dense-storage dimension cap.
class capacity_error : public error {
 public:
  explicit capacity_error(const std::string& what) : error(what) {}
};

// A separable decomposition was requested for a cut the library makes no
// separability claim about.
class unsupported_cut_error : public error {
 public:
  explicit unsupported_cut_error(const std::string& what) : error(what) {}
};

}  // namespace qube
