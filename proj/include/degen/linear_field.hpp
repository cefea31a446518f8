#pragma once

#include <cstdint>
#include <memory>
#include <utility>

#include <degen/ensemble.hpp>
#include <degen/mesh.hpp>
#include <degen/tensor.hpp>

namespace degen {

/// Linear tensor field T(x,y,z) = x Tx + y Ty + z Tz + T0 sampled on a
/// uniformly tetrahedralized box.
struct LinearFieldSpec {
  SymTensor3 tx, ty, tz, t0;
  Box domain{{0, 0, 0}, {2, 2, 2}};
  int resolution = 51;  // points per axis
};

/// Reference coefficients: eigenvalues are distinct everywhere except along
/// the straight line x = 1, y = 1, which is planar degenerate.
LinearFieldSpec straight_line_field();

/// Ensemble member pose: rigid translation plus rotation by theta about the
/// vertical axis through (1 + dx, 1 + dy). Only evaluation coordinates are
/// transformed; tensor components are not re-oriented.
struct MemberTransform {
  double dx = 0.0, dy = 0.0, dz = 0.0;
  double theta = 0.0;  // radians
};

/// Gaussian component noise N(0, sigma^2), reproducible from the seed via a
/// counter-based generator keyed by (seed, member, vertex, component).
struct NoiseSpec {
  double sigma = 0.1;
  std::uint64_t seed = 0;
};

/// n^3 points, 5 (n-1)^3 tets; cubes split into five tetrahedra with
/// alternating parity so shared faces conform. All volumes positive.
std::shared_ptr<TetMesh> build_box_mesh(const Box& domain, int n);

SymTensor3 eval_linear(const LinearFieldSpec& spec, const Vec3& p);

/// Coordinate a member samples the base field at: rotate about the pivot
/// (1 + dx, 1 + dy), then shift by the translation.
Vec3 member_coordinates(const MemberTransform& tf, const Vec3& p);

SymTensor3 eval_member(const LinearFieldSpec& spec, const MemberTransform& tf, const Vec3& p);

/// Base field sampled at every mesh vertex.
TensorField sample_linear_field(const LinearFieldSpec& spec, TetMeshPtr mesh);

/// m members with (dx, theta) paired index-wise and sampled evenly over the
/// two ranges, endpoints inclusive; m = 1 uses the range midpoints.
Ensemble gen_trans_rot_ensemble(const LinearFieldSpec& spec, int m,
                                std::pair<double, double> dx_range,
                                std::pair<double, double> theta_range, int threads = 0);

/// m members, each the base field plus i.i.d. component noise.
Ensemble gen_noise_ensemble(const LinearFieldSpec& spec, int m, const NoiseSpec& noise,
                            int threads = 0);

}  // namespace degen
