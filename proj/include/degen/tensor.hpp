#pragma once

#include <degen/vec3.hpp>

namespace degen {

/// Symmetric 3x3 second-order tensor stored as its 6 independent components.
struct SymTensor3 {
  double xx = 0.0, yy = 0.0, zz = 0.0;
  double xy = 0.0, xz = 0.0, yz = 0.0;

  SymTensor3() = default;
  SymTensor3(double xx_, double yy_, double zz_, double xy_, double xz_, double yz_)
      : xx(xx_), yy(yy_), zz(zz_), xy(xy_), xz(xz_), yz(yz_) {}

  static SymTensor3 diagonal(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }
  static SymTensor3 identity() { return diagonal(1.0, 1.0, 1.0); }

  /// Full-matrix element access; (i,j) and (j,i) read the same component.
  double operator()(int i, int j) const;

  SymTensor3& operator+=(const SymTensor3& o);
  SymTensor3& operator-=(const SymTensor3& o);
  SymTensor3& operator*=(double s);

  Vec3 apply(const Vec3& v) const;  // T*v
  double frobenius_norm() const;
};

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator*(double s, SymTensor3 t);
SymTensor3 operator*(SymTensor3 t, double s);

/// Eigen-decomposition with lambda1 >= lambda2 >= lambda3 and orthonormal
/// eigenvectors. Sign convention: the first component of each eigenvector
/// whose magnitude exceeds 1e-9 is nonnegative.
struct EigenSystem {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  Vec3 e1, e2, e3;
};

EigenSystem eigen(const SymTensor3& t);

double trace(const SymTensor3& t);
double determinant(const SymTensor3& t);

/// Traceless part T - (tr(T)/3) I.
SymTensor3 deviator(const SymTensor3& t);

/// Tensor mode 3*sqrt(6)*det(A/|A|) with A the deviator, clamped to [-1,1].
/// Near-isotropic tensors (|A| below 1e-12*max(1,|T|)) have no defined mode;
/// the function returns 0 and sets *near_isotropic when the pointer is given.
double mode(const SymTensor3& t, bool* near_isotropic = nullptr);

/// |mode(T)|, in [0,1]; same near-isotropic policy as mode().
double mode_abs(const SymTensor3& t, bool* near_isotropic = nullptr);

/// (l1-l2)^2 (l2-l3)^2 (l1-l3)^2; nonnegative, zero exactly at degeneracy.
double discriminant(const SymTensor3& t);

}  // namespace degen
