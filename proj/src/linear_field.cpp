#include <degen/linear_field.hpp>

#include <cmath>

#include <degen/errors.hpp>
#include <degen/parallel.hpp>

namespace degen {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t v) {
  // (0,1]: 53 mantissa bits plus a half-ulp offset so log() never sees 0
  return static_cast<double>(v >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Stateless Gaussian draw keyed by (seed, member, vertex, component).
double gaussian_draw(std::uint64_t seed, std::uint64_t member, std::uint64_t vertex,
                     std::uint64_t component) {
  std::uint64_t key = mix64(mix64(mix64(mix64(seed) ^ member) ^ vertex) ^ component);
  double u1 = to_unit(key);
  double u2 = to_unit(mix64(key ^ 0xda3e39cb94b95bdbULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace

LinearFieldSpec straight_line_field() {
  LinearFieldSpec spec;
  spec.tx = {1, 0, 0, 1, 0, 0};   // [[1,1,0],[1,0,0],[0,0,0]]
  spec.ty = {0, 2, 0, -1, 0, 0};  // [[0,-1,0],[-1,2,0],[0,0,0]]
  spec.tz = {0, 0, 1, 0, 0, 0};
  spec.t0 = {7, 6, 1, 0, 0, 0};
  spec.domain = {{0, 0, 0}, {2, 2, 2}};
  spec.resolution = 51;
  return spec;
}

std::shared_ptr<TetMesh> build_box_mesh(const Box& domain, int n) {
  if (n < 2) throw DomainError("box mesh needs at least 2 points per axis, got " + std::to_string(n));
  Vec3 ext = domain.extent();
  if (!(ext.x > 0.0 && ext.y > 0.0 && ext.z > 0.0)) throw DomainError("degenerate domain box");

  auto mesh = std::make_shared<TetMesh>();
  mesh->points.resize(static_cast<size_t>(n) * n * n);
  auto pid = [n](int i, int j, int k) { return (static_cast<size_t>(k) * n + j) * n + i; };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        mesh->points[pid(i, j, k)] = {domain.min.x + ext.x * i / (n - 1),
                                      domain.min.y + ext.y * j / (n - 1),
                                      domain.min.z + ext.z * k / (n - 1)};

  // five-tet cube split; corner index bits are (x, y, z)
  static const int kEven[5][4][3] = {
      {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 0, 1}},
      {{0, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 1, 1}},
      {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 1}},
      {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}},
      {{0, 0, 0}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1}},
  };

  size_t ncubes = static_cast<size_t>(n - 1) * (n - 1) * (n - 1);
  mesh->tets.reserve(5 * ncubes);
  for (int k = 0; k + 1 < n; ++k)
    for (int j = 0; j + 1 < n; ++j)
      for (int i = 0; i + 1 < n; ++i) {
        bool odd = (i + j + k) & 1;
        for (const auto& tet : kEven) {
          std::array<int, 4> ids;
          for (int v = 0; v < 4; ++v) {
            int dx = odd ? 1 - tet[v][0] : tet[v][0];  // mirror x on odd cubes
            ids[v] = static_cast<int>(pid(i + dx, j + tet[v][1], k + tet[v][2]));
          }
          mesh->tets.push_back(ids);
          if (mesh->tet_volume(static_cast<int>(mesh->tets.size() - 1)) < 0.0)
            std::swap(mesh->tets.back()[1], mesh->tets.back()[2]);
        }
      }
  return mesh;
}

SymTensor3 eval_linear(const LinearFieldSpec& spec, const Vec3& p) {
  return p.x * spec.tx + p.y * spec.ty + p.z * spec.tz + spec.t0;
}

Vec3 member_coordinates(const MemberTransform& tf, const Vec3& p) {
  double px = 1.0 + tf.dx, py = 1.0 + tf.dy;
  double c = std::cos(tf.theta), s = std::sin(tf.theta);
  double u = p.x - px, v = p.y - py;
  double xr = c * u + s * v + px;
  double yr = -s * u + c * v + py;
  return {xr - tf.dx, yr - tf.dy, p.z - tf.dz};
}

SymTensor3 eval_member(const LinearFieldSpec& spec, const MemberTransform& tf, const Vec3& p) {
  return eval_linear(spec, member_coordinates(tf, p));
}

TensorField sample_linear_field(const LinearFieldSpec& spec, TetMeshPtr mesh) {
  TensorField field;
  field.tensors.resize(mesh->points.size());
  for (size_t i = 0; i < mesh->points.size(); ++i)
    field.tensors[i] = eval_linear(spec, mesh->points[i]);
  field.mesh = std::move(mesh);
  return field;
}

Ensemble gen_trans_rot_ensemble(const LinearFieldSpec& spec, int m,
                                std::pair<double, double> dx_range,
                                std::pair<double, double> theta_range, int threads) {
  if (m < 1) throw DomainError("ensemble needs at least one member");
  Ensemble ens;
  ens.mesh = build_box_mesh(spec.domain, spec.resolution);
  ens.members.resize(m);

  for (int i = 0; i < m; ++i) {
    MemberTransform tf;
    if (m == 1) {
      tf.dx = 0.5 * (dx_range.first + dx_range.second);
      tf.theta = 0.5 * (theta_range.first + theta_range.second);
    } else {
      double s = static_cast<double>(i) / (m - 1);
      tf.dx = dx_range.first + s * (dx_range.second - dx_range.first);
      tf.theta = theta_range.first + s * (theta_range.second - theta_range.first);
    }
    auto& member = ens.members[i];
    member.resize(ens.mesh->points.size());
    parallel_chunks(member.size(), threads, [&](size_t begin, size_t end) {
      for (size_t v = begin; v < end; ++v) member[v] = eval_member(spec, tf, ens.mesh->points[v]);
    });
  }
  return ens;
}

Ensemble gen_noise_ensemble(const LinearFieldSpec& spec, int m, const NoiseSpec& noise,
                            int threads) {
  if (m < 1) throw DomainError("ensemble needs at least one member");
  if (noise.sigma < 0.0) throw DomainError("noise sigma must be nonnegative");

  Ensemble ens;
  ens.mesh = build_box_mesh(spec.domain, spec.resolution);
  size_t npoints = ens.mesh->points.size();

  std::vector<SymTensor3> base(npoints);
  for (size_t v = 0; v < npoints; ++v) base[v] = eval_linear(spec, ens.mesh->points[v]);

  ens.members.assign(m, {});
  for (int i = 0; i < m; ++i) {
    auto& member = ens.members[i];
    member = base;
    if (noise.sigma == 0.0) continue;
    parallel_chunks(npoints, threads, [&](size_t begin, size_t end) {
      for (size_t v = begin; v < end; ++v) {
        SymTensor3& t = member[v];
        double* comps[6] = {&t.xx, &t.yy, &t.zz, &t.xy, &t.xz, &t.yz};
        for (std::uint64_t c = 0; c < 6; ++c)
          *comps[c] += noise.sigma * gaussian_draw(noise.seed, static_cast<std::uint64_t>(i), v, c);
      }
    });
  }
  return ens;
}

}  // namespace degen
