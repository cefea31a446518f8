#pragma once

#include <string>
#include <vector>

#include <degen/mesh.hpp>

namespace degen {

/// Reads a VTK legacy ASCII unstructured grid of tetrahedra carrying either a
/// POINT_DATA TENSORS block (9 components, symmetrized on load) or a FIELD
/// array named "sym_tensor" with 6 components per point.
/// Throws ParseError / UnsupportedCellType / AsymmetryError / IoError.
TensorField read_vtk_tensor_field(const std::string& path);

/// Writers emit VTK legacy ASCII ("# vtk DataFile Version 3.0") with numbers
/// printed to 17 significant digits, so write/read round-trips are bit-exact.
void write_vtk_tensor_field(const TensorField& field, const std::string& path);
void write_vtk_scalar_field(const ScalarField& field, const std::string& name,
                            const std::string& path);
void write_polylines_vtk(const std::vector<FeaturePolyline>& lines, const std::string& path);
void write_surface_vtk(const TriangleSurface& surface, const std::string& path);

/// OBJ export: geometry only (v records plus l records for polylines or
/// f records for triangles).
void write_obj(const std::vector<FeaturePolyline>& lines, const std::string& path);
void write_obj(const TriangleSurface& surface, const std::string& path);

}  // namespace degen
