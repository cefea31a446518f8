#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <degen/tensor.hpp>
#include <degen/vec3.hpp>

namespace degen {

/// Axis-aligned box.
struct Box {
  Vec3 min{0, 0, 0};
  Vec3 max{1, 1, 1};
  Vec3 extent() const { return max - min; }
  double diagonal() const { return norm(extent()); }
};

/// Tetrahedral mesh: shared, immutable after construction.
struct TetMesh {
  std::vector<Vec3> points;
  std::vector<std::array<int, 4>> tets;

  Box bounding_box() const;
  double tet_volume(int t) const;

  /// Flips tets with negative volume and validates indices; throws ParseError
  /// on out-of-range indices, zero-volume tets, or duplicate tets.
  void orient_and_validate();
};

using TetMeshPtr = std::shared_ptr<const TetMesh>;

struct TensorField {
  TetMeshPtr mesh;
  std::vector<SymTensor3> tensors;  // one per mesh point
};

struct ScalarField {
  TetMeshPtr mesh;
  std::vector<double> values;  // one per mesh point
};

/// Ordered 3D polyline with optional per-point scalar channels and unit
/// tangents. Closed lines do not repeat the first point; `closed` flags them.
struct FeaturePolyline {
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;
  std::map<std::string, std::vector<double>> attributes;
  bool closed = false;
};

/// Indexed triangle mesh with optional per-point scalar channels.
struct TriangleSurface {
  std::vector<Vec3> points;
  std::vector<std::array<int, 3>> triangles;
  std::map<std::string, std::vector<double>> scalars;
};

/// Barycentric location of a query point inside a tet.
struct CellLocation {
  int tet = -1;
  std::array<double, 4> bary{0, 0, 0, 0};
};

/// Barycentric coordinates of x in tet t; unclamped (can be negative outside).
std::array<double, 4> barycentric_coordinates(const TetMesh& mesh, int t, const Vec3& x);

/// Uniform-grid point locator over a tet mesh. Returns std::nullopt for
/// points outside the mesh.
class PointLocator {
 public:
  explicit PointLocator(TetMeshPtr mesh);

  std::optional<CellLocation> locate(const Vec3& x) const;

 private:
  TetMeshPtr mesh_;
  Box box_;
  int nx_ = 1, ny_ = 1, nz_ = 1;
  Vec3 cell_size_{1, 1, 1};
  std::vector<std::vector<int>> bins_;

  int bin_index(int i, int j, int k) const { return (k * ny_ + j) * nx_ + i; }
};

/// Component-wise linear interpolation at barycentric weights inside a tet.
/// Weights must be >= -1e-9 (OutOfCell otherwise) and sum to 1 within 1e-10.
SymTensor3 interpolate_tensor(const TensorField& field, int tet,
                              const std::array<double, 4>& bary);
double interpolate_scalar(const ScalarField& field, int tet,
                          const std::array<double, 4>& bary);

}  // namespace degen
