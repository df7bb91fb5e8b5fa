#pragma once

#include <stdexcept>
#include <string>

namespace holosim {

/// Invalid user-facing configuration (bad scenario name, malformed config
/// file, unknown override key). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical precondition was violated (sampling guard, grid mismatch,
/// non-positive distance). CLI exit code 3.
class NumericalGuardError : public std::runtime_error {
public:
  explicit NumericalGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The incoherent-source effective diffraction length diverges: the
/// closed-form hologram integral degenerates at the equal-path condition.
class DivergentEffectiveLength : public NumericalGuardError {
public:
  explicit DivergentEffectiveLength(const std::string& what)
      : NumericalGuardError(what) {}
};

} // namespace holosim
