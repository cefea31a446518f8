#include <degen/tensor.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace degen {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Relative eigenvalue-gap threshold below which the closed-form solution is
// replaced by cyclic Jacobi. The trigonometric formulas lose roughly half the
// significant digits of a small gap through acos, so the switch happens well
// before eigenvector quality degrades.
constexpr double kClosedFormGapLimit = 1e-6;

void sign_convention(Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-9) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

// Cyclic Jacobi for a symmetric 3x3 matrix. Converges quadratically and keeps
// the accumulated eigenvector basis orthonormal at every step, which the
// closed form cannot guarantee near degeneracy.
EigenSystem jacobi_eigen(const SymTensor3& t) {
  double a[3][3] = {{t.xx, t.xy, t.xz}, {t.xy, t.yy, t.yz}, {t.xz, t.yz, t.zz}};
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  double scale = t.frobenius_norm();
  double tol = 1e-15 * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
    if (off <= tol) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double tq = (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(tq * tq + 1.0);
        double s = tq * c;
        double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = app - tq * apq;
        a[q][q] = aqq + tq * apq;
        a[p][q] = 0.0;
        int r = 3 - p - q;
        double arp = a[std::min(r, p)][std::max(r, p)];
        double arq = a[std::min(r, q)][std::max(r, q)];
        a[std::min(r, p)][std::max(r, p)] = c * arp - s * arq;
        a[std::min(r, q)][std::max(r, q)] = s * arp + c * arq;
        for (int k = 0; k < 3; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });

  EigenSystem es;
  es.lambda1 = a[idx[0]][idx[0]];
  es.lambda2 = a[idx[1]][idx[1]];
  es.lambda3 = a[idx[2]][idx[2]];
  es.e1 = {v[0][idx[0]], v[1][idx[0]], v[2][idx[0]]};
  es.e2 = {v[0][idx[1]], v[1][idx[1]], v[2][idx[1]]};
  es.e3 = {v[0][idx[2]], v[1][idx[2]], v[2][idx[2]]};
  sign_convention(es.e1);
  sign_convention(es.e2);
  sign_convention(es.e3);
  return es;
}

// Eigenvector of (T - lambda I) as the largest cross product of its rows.
Vec3 eigenvector_for(const SymTensor3& t, double lambda) {
  Vec3 r0{t.xx - lambda, t.xy, t.xz};
  Vec3 r1{t.xy, t.yy - lambda, t.yz};
  Vec3 r2{t.xz, t.yz, t.zz - lambda};
  Vec3 c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
  double n01 = norm2(c01), n02 = norm2(c02), n12 = norm2(c12);
  Vec3 best = c01;
  double bn = n01;
  if (n02 > bn) { best = c02; bn = n02; }
  if (n12 > bn) { best = c12; bn = n12; }
  return normalized(best);
}

}  // namespace

double SymTensor3::operator()(int i, int j) const {
  if (i == j) return i == 0 ? xx : (i == 1 ? yy : zz);
  int a = std::min(i, j), b = std::max(i, j);
  if (a == 0) return b == 1 ? xy : xz;
  return yz;
}

SymTensor3& SymTensor3::operator+=(const SymTensor3& o) {
  xx += o.xx; yy += o.yy; zz += o.zz;
  xy += o.xy; xz += o.xz; yz += o.yz;
  return *this;
}

SymTensor3& SymTensor3::operator-=(const SymTensor3& o) {
  xx -= o.xx; yy -= o.yy; zz -= o.zz;
  xy -= o.xy; xz -= o.xz; yz -= o.yz;
  return *this;
}

SymTensor3& SymTensor3::operator*=(double s) {
  xx *= s; yy *= s; zz *= s;
  xy *= s; xz *= s; yz *= s;
  return *this;
}

Vec3 SymTensor3::apply(const Vec3& v) const {
  return {xx * v.x + xy * v.y + xz * v.z,
          xy * v.x + yy * v.y + yz * v.z,
          xz * v.x + yz * v.y + zz * v.z};
}

double SymTensor3::frobenius_norm() const {
  return std::sqrt(xx * xx + yy * yy + zz * zz + 2.0 * (xy * xy + xz * xz + yz * yz));
}

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
SymTensor3 operator*(double s, SymTensor3 t) { return t *= s; }
SymTensor3 operator*(SymTensor3 t, double s) { return t *= s; }

double trace(const SymTensor3& t) { return t.xx + t.yy + t.zz; }

double determinant(const SymTensor3& t) {
  return t.xx * (t.yy * t.zz - t.yz * t.yz) - t.xy * (t.xy * t.zz - t.yz * t.xz) +
         t.xz * (t.xy * t.yz - t.yy * t.xz);
}

SymTensor3 deviator(const SymTensor3& t) {
  double m = trace(t) / 3.0;
  SymTensor3 a = t;
  a.xx -= m;
  a.yy -= m;
  a.zz -= m;
  return a;
}

EigenSystem eigen(const SymTensor3& t) {
  double q = trace(t) / 3.0;
  SymTensor3 b = deviator(t);
  double p = b.frobenius_norm() / std::sqrt(6.0);
  double scale = std::max(t.frobenius_norm(), 1e-300);

  if (p < 1e-14 * scale) {
    // isotropic: any orthonormal basis is an eigenbasis
    EigenSystem es;
    es.lambda1 = es.lambda2 = es.lambda3 = q;
    es.e1 = {1, 0, 0};
    es.e2 = {0, 1, 0};
    es.e3 = {0, 0, 1};
    return es;
  }

  double r = determinant(b) / (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double l1 = q + 2.0 * p * std::cos(phi);
  double l3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  double l2 = 3.0 * q - l1 - l3;

  if (std::min(l1 - l2, l2 - l3) < kClosedFormGapLimit * scale) return jacobi_eigen(t);

  EigenSystem es;
  es.lambda1 = l1;
  es.lambda2 = l2;
  es.lambda3 = l3;
  es.e1 = eigenvector_for(t, l1);
  es.e3 = eigenvector_for(t, l3);
  es.e2 = normalized(cross(es.e3, es.e1));
  sign_convention(es.e1);
  sign_convention(es.e2);
  sign_convention(es.e3);
  return es;
}

double mode(const SymTensor3& t, bool* near_isotropic) {
  if (near_isotropic) *near_isotropic = false;
  SymTensor3 a = deviator(t);
  double n = a.frobenius_norm();
  if (n < 1e-12 * std::max(1.0, t.frobenius_norm())) {
    if (near_isotropic) *near_isotropic = true;
    return 0.0;
  }
  SymTensor3 u = a;
  u *= 1.0 / n;
  double m = 3.0 * std::sqrt(6.0) * determinant(u);
  return std::clamp(m, -1.0, 1.0);
}

double mode_abs(const SymTensor3& t, bool* near_isotropic) {
  return std::abs(mode(t, near_isotropic));
}

double discriminant(const SymTensor3& t) {
  EigenSystem es = eigen(t);
  double d12 = es.lambda1 - es.lambda2;
  double d23 = es.lambda2 - es.lambda3;
  double d13 = es.lambda1 - es.lambda3;
  return d12 * d12 * d23 * d23 * d13 * d13;
}

}  // namespace degen
