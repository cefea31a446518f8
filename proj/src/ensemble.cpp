#include <degen/ensemble.hpp>

#include <cmath>

#include <degen/errors.hpp>
#include <degen/parallel.hpp>

namespace degen {

TensorField mean_tensor_field(const Ensemble& ens) {
  size_t npoints = ens.mesh->points.size();
  TensorField out;
  out.mesh = ens.mesh;
  out.tensors.assign(npoints, SymTensor3{});
  double inv_m = 1.0 / ens.member_count();
  for (const auto& member : ens.members)
    for (size_t i = 0; i < npoints; ++i) out.tensors[i] += member[i];
  for (auto& t : out.tensors) t *= inv_m;
  return out;
}

ModeStats mode_stats(const Ensemble& ens, int threads) {
  size_t npoints = ens.mesh->points.size();
  int m = ens.member_count();

  ModeStats stats;
  stats.mean_mode = {ens.mesh, std::vector<double>(npoints, 0.0)};
  stats.mode_std = {ens.mesh, std::vector<double>(npoints, 0.0)};
  stats.near_isotropic_count.assign(npoints, 0);

  parallel_chunks(npoints, threads, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      double sum = 0.0, sum_sq = 0.0;
      int iso = 0;
      for (const auto& member : ens.members) {
        bool near_iso = false;
        double v = mode_abs(member[i], &near_iso);
        if (near_iso) ++iso;  // contributes v = 0
        sum += v;
        sum_sq += v * v;
      }
      double mean = sum / m;
      stats.mean_mode.values[i] = mean;
      stats.near_isotropic_count[i] = iso;
      if (m > 1) {
        double var = (sum_sq - m * mean * mean) / (m - 1);
        stats.mode_std.values[i] = std::sqrt(std::max(var, 0.0));
      }
    }
  });
  return stats;
}

ScalarField mode_of_mean_field(const Ensemble& ens, int threads) {
  TensorField mean = mean_tensor_field(ens);
  ScalarField out{ens.mesh, std::vector<double>(mean.tensors.size(), 0.0)};
  parallel_chunks(mean.tensors.size(), threads, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) out.values[i] = mode_abs(mean.tensors[i]);
  });
  return out;
}

ScalarField probability_field(const ModeStats& stats, double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw DomainError("probability threshold t must be in (0, 1], got " + std::to_string(t));

  size_t npoints = stats.mean_mode.values.size();
  ScalarField out{stats.mean_mode.mesh, std::vector<double>(npoints, 0.0)};
  for (size_t i = 0; i < npoints; ++i) {
    double mu = stats.mean_mode.values[i];
    double sigma = stats.mode_std.values[i];
    double p;
    if (sigma == 0.0) {
      p = mu >= t ? 1.0 : 0.0;  // limit of the Gaussian CDF
    } else {
      double z = (t - mu) / sigma;
      double phi = 0.5 * (1.0 + std::erf(z / std::sqrt(2.0)));
      p = 1.0 - phi;
    }
    out.values[i] = std::clamp(p, 0.0, 1.0);
  }
  return out;
}

}  // namespace degen
