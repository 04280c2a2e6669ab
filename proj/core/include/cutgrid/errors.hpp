#pragma once

#include <stdexcept>
#include <string>

namespace cutgrid {

// Bad or unreadable input data (exit code 2 at the CLI).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometric failure: tolerance pathology, inconsistent orientation, ... (exit code 3).
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Distributed protocol failure, reported with the phase name (exit code 4).
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cutgrid
