#pragma once

#include <stdexcept>
#include <string>

namespace tcqed {

/// A state occupies number levels whose excitation sector is cut by the
/// truncation, so the exact propagator would leave the retained space.
class HeadroomError : public std::domain_error {
 public:
  explicit HeadroomError(const std::string& what) : std::domain_error(what) {}
};

/// The requested truncation drops more probability mass than allowed.
class TruncationError : public std::domain_error {
 public:
  explicit TruncationError(const std::string& what) : std::domain_error(what) {}
};

/// A planner found no parameters satisfying its targets.
class NoSolutionError : public std::runtime_error {
 public:
  explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcqed
