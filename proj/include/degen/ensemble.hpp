#pragma once

#include <vector>

#include <degen/mesh.hpp>

namespace degen {

/// m tensor fields over one shared mesh.
struct Ensemble {
  TetMeshPtr mesh;
  std::vector<std::vector<SymTensor3>> members;  // members[i] has one tensor per point

  int member_count() const { return static_cast<int>(members.size()); }
};

/// Per-vertex statistics of the absolute tensor mode across members.
struct ModeStats {
  ScalarField mean_mode;                  // mean of |mode|, in [0,1]
  ScalarField mode_std;                   // sample standard deviation (m-1), 0 when m == 1
  std::vector<int> near_isotropic_count;  // members with undefined mode, per vertex
};

/// Component-wise mean tensor per vertex.
TensorField mean_tensor_field(const Ensemble& ens);

/// Mean and sample standard deviation of |mode| per vertex. Near-isotropic
/// members contribute 0 to the mean and are counted separately.
ModeStats mode_stats(const Ensemble& ens, int threads = 0);

/// |mode| of the component-wise mean tensor, per vertex.
ScalarField mode_of_mean_field(const Ensemble& ens, int threads = 0);

/// Per-vertex probability P(X >= t) under X ~ N(mean_mode, mode_std^2),
/// evaluated as 1 - Phi((t - mean_mode)/mode_std). Degenerate sigma = 0 turns
/// into a step: 1 where mean_mode >= t, else 0. Throws DomainError unless
/// t is in (0, 1].
ScalarField probability_field(const ModeStats& stats, double t);

}  // namespace degen
