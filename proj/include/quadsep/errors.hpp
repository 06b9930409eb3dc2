#pragma once

#include <stdexcept>
#include <string>

namespace quadsep {

/// Bad caller input: dimension mismatches, constant functions where a
/// non-constant one is required, malformed problem files.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative kernel failed to converge; carries the final residual.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A relationship that must hold between computed results failed to hold.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace quadsep
