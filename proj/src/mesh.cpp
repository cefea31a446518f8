#include <degen/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include <degen/errors.hpp>

namespace degen {

Box TetMesh::bounding_box() const {
  Box b;
  if (points.empty()) return b;
  b.min = b.max = points[0];
  for (const Vec3& p : points) {
    b.min.x = std::min(b.min.x, p.x);
    b.min.y = std::min(b.min.y, p.y);
    b.min.z = std::min(b.min.z, p.z);
    b.max.x = std::max(b.max.x, p.x);
    b.max.y = std::max(b.max.y, p.y);
    b.max.z = std::max(b.max.z, p.z);
  }
  return b;
}

double TetMesh::tet_volume(int t) const {
  const auto& tet = tets[t];
  Vec3 a = points[tet[1]] - points[tet[0]];
  Vec3 b = points[tet[2]] - points[tet[0]];
  Vec3 c = points[tet[3]] - points[tet[0]];
  return dot(a, cross(b, c)) / 6.0;
}

void TetMesh::orient_and_validate() {
  int np = static_cast<int>(points.size());
  double vol_floor = 1e-300;
  Box bb = bounding_box();
  double d = bb.diagonal();
  if (d > 0.0) vol_floor = 1e-18 * d * d * d;

  std::set<std::array<int, 4>> seen;
  for (size_t t = 0; t < tets.size(); ++t) {
    auto& tet = tets[t];
    for (int v : tet) {
      if (v < 0 || v >= np)
        throw ParseError("tet " + std::to_string(t) + " references point " + std::to_string(v) +
                         " out of range");
    }
    double vol = tet_volume(static_cast<int>(t));
    if (vol < 0.0) {
      std::swap(tet[1], tet[2]);
      vol = -vol;
    }
    if (vol <= vol_floor)
      throw ParseError("tet " + std::to_string(t) + " has zero volume");
    std::array<int, 4> key = tet;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw ParseError("duplicate tet " + std::to_string(t));
  }
}

std::array<double, 4> barycentric_coordinates(const TetMesh& mesh, int t, const Vec3& x) {
  const auto& tet = mesh.tets[t];
  Vec3 a = mesh.points[tet[0]];
  Vec3 e1 = mesh.points[tet[1]] - a;
  Vec3 e2 = mesh.points[tet[2]] - a;
  Vec3 e3 = mesh.points[tet[3]] - a;
  Vec3 r = x - a;

  // Cramer on the 3x3 edge matrix
  double det = dot(e1, cross(e2, e3));
  double w1 = dot(r, cross(e2, e3)) / det;
  double w2 = dot(e1, cross(r, e3)) / det;
  double w3 = dot(e1, cross(e2, r)) / det;
  return {1.0 - w1 - w2 - w3, w1, w2, w3};
}

PointLocator::PointLocator(TetMeshPtr mesh) : mesh_(std::move(mesh)) {
  box_ = mesh_->bounding_box();
  size_t ntets = mesh_->tets.size();
  int n = std::max(1, static_cast<int>(std::cbrt(static_cast<double>(ntets) / 4.0)));
  n = std::min(n, 128);
  nx_ = ny_ = nz_ = n;
  Vec3 ext = box_.extent();
  cell_size_ = {std::max(ext.x, 1e-300) / nx_, std::max(ext.y, 1e-300) / ny_,
                std::max(ext.z, 1e-300) / nz_};
  bins_.resize(static_cast<size_t>(nx_) * ny_ * nz_);

  for (size_t t = 0; t < ntets; ++t) {
    Vec3 lo = mesh_->points[mesh_->tets[t][0]], hi = lo;
    for (int k = 1; k < 4; ++k) {
      const Vec3& p = mesh_->points[mesh_->tets[t][k]];
      lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
      hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    auto clampi = [](int v, int n) { return std::clamp(v, 0, n - 1); };
    int i0 = clampi(static_cast<int>((lo.x - box_.min.x) / cell_size_.x), nx_);
    int i1 = clampi(static_cast<int>((hi.x - box_.min.x) / cell_size_.x), nx_);
    int j0 = clampi(static_cast<int>((lo.y - box_.min.y) / cell_size_.y), ny_);
    int j1 = clampi(static_cast<int>((hi.y - box_.min.y) / cell_size_.y), ny_);
    int k0 = clampi(static_cast<int>((lo.z - box_.min.z) / cell_size_.z), nz_);
    int k1 = clampi(static_cast<int>((hi.z - box_.min.z) / cell_size_.z), nz_);
    for (int k = k0; k <= k1; ++k)
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) bins_[bin_index(i, j, k)].push_back(static_cast<int>(t));
  }
}

std::optional<CellLocation> PointLocator::locate(const Vec3& x) const {
  constexpr double kTol = 1e-9;
  double pad = kTol * std::max(1.0, box_.diagonal());
  if (x.x < box_.min.x - pad || x.x > box_.max.x + pad || x.y < box_.min.y - pad ||
      x.y > box_.max.y + pad || x.z < box_.min.z - pad || x.z > box_.max.z + pad)
    return std::nullopt;

  auto clampi = [](int v, int n) { return std::clamp(v, 0, n - 1); };
  int i = clampi(static_cast<int>((x.x - box_.min.x) / cell_size_.x), nx_);
  int j = clampi(static_cast<int>((x.y - box_.min.y) / cell_size_.y), ny_);
  int k = clampi(static_cast<int>((x.z - box_.min.z) / cell_size_.z), nz_);

  auto try_tets = [&](const std::vector<int>& tets) -> std::optional<CellLocation> {
    CellLocation best;
    double best_min = -1e300;
    for (int t : tets) {
      auto w = barycentric_coordinates(*mesh_, t, x);
      double wmin = std::min(std::min(w[0], w[1]), std::min(w[2], w[3]));
      if (wmin > best_min) {
        best_min = wmin;
        best = {t, w};
      }
    }
    if (best_min >= -kTol) return best;
    return std::nullopt;
  };

  if (auto loc = try_tets(bins_[bin_index(i, j, k)])) return loc;

  // rare: point sits on a bin boundary; widen the search before giving up
  std::vector<int> widened;
  for (int dk = -1; dk <= 1; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0 && dk == 0) continue;
        int ii = i + di, jj = j + dj, kk = k + dk;
        if (ii < 0 || ii >= nx_ || jj < 0 || jj >= ny_ || kk < 0 || kk >= nz_) continue;
        const auto& b = bins_[bin_index(ii, jj, kk)];
        widened.insert(widened.end(), b.begin(), b.end());
      }
  if (auto loc = try_tets(widened)) return loc;
  return std::nullopt;
}

namespace {

void check_weights(const std::array<double, 4>& bary) {
  double sum = 0.0;
  for (double w : bary) {
    if (w < -1e-9) throw OutOfCell("barycentric weight " + std::to_string(w) + " below -1e-9");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw OutOfCell("barycentric weights sum to " + std::to_string(sum));
}

}  // namespace

SymTensor3 interpolate_tensor(const TensorField& field, int tet,
                              const std::array<double, 4>& bary) {
  check_weights(bary);
  const auto& t = field.mesh->tets[tet];
  SymTensor3 out;
  for (int k = 0; k < 4; ++k) out += bary[k] * field.tensors[t[k]];
  return out;
}

double interpolate_scalar(const ScalarField& field, int tet, const std::array<double, 4>& bary) {
  check_weights(bary);
  const auto& t = field.mesh->tets[tet];
  double out = 0.0;
  for (int k = 0; k < 4; ++k) out += bary[k] * field.values[t[k]];
  return out;
}

}  // namespace degen
