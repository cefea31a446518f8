#pragma once

#include <stdexcept>
#include <string>

namespace degen {

/// Malformed or unreadable input file.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mesh contains cells other than tetrahedra.
struct UnsupportedCellType : std::runtime_error {
  explicit UnsupportedCellType(const std::string& msg) : std::runtime_error(msg) {}
};

/// Tensor data violates the symmetry tolerance.
struct AsymmetryError : std::runtime_error {
  explicit AsymmetryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem-level write/read failure.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter outside its documented range.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Interpolation request with weights outside the cell.
struct OutOfCell : std::runtime_error {
  explicit OutOfCell(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ensemble members defined on different meshes.
struct MeshMismatch : std::runtime_error {
  explicit MeshMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace degen
