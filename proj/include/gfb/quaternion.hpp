#pragma once

/// @file quaternion.hpp
/// @brief Unit quaternion arithmetic for the Sp(1) x Sp(1) group models.
///
/// Hand-rolled on purpose: the library needs exponential/logarithm charts,
/// multiplication matrices and derivative formulas in a single convention,
/// which is less error prone than adapting a general-purpose rotation class.
/// Coefficient order throughout is (w, x, y, z) = w + x*i + y*j + z*k.

#include <cmath>
#include <stdexcept>

#include "gfb/linalg.hpp"

namespace gfb {

struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  [[nodiscard]] double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  [[nodiscard]] Quat conj() const { return {w, -x, -y, -z}; }

  [[nodiscard]] Quat normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero quaternion");
    return {w / n, x / n, y / n, z / n};
  }

  [[nodiscard]] Eigen::Vector4d coeffs() const { return {w, x, y, z}; }

  static Quat from_coeffs(const Eigen::Vector4d& c) { return {c(0), c(1), c(2), c(3)}; }
};

inline Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat operator+(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

inline Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

/// Matrix of left multiplication: (p * z).coeffs() == left_mul_matrix(p) * z.coeffs().
inline Eigen::Matrix4d left_mul_matrix(const Quat& p) {
  Eigen::Matrix4d m;
  m << p.w, -p.x, -p.y, -p.z,
       p.x,  p.w, -p.z,  p.y,
       p.y,  p.z,  p.w, -p.x,
       p.z, -p.y,  p.x,  p.w;
  return m;
}

/// Matrix of right multiplication: (z * q).coeffs() == right_mul_matrix(q) * z.coeffs().
inline Eigen::Matrix4d right_mul_matrix(const Quat& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w,  q.z, -q.y,
       q.y, -q.z,  q.w,  q.x,
       q.z,  q.y, -q.x,  q.w;
  return m;
}

/// exp of the pure quaternion u1*i + u2*j + u3*k.
inline Quat quat_exp(const Eigen::Vector3d& u) {
  double r = u.norm();
  double s;  // sin(r)/r, stable at r = 0
  if (r < 1e-4) {
    double r2 = r * r;
    s = 1.0 - r2 / 6.0 + r2 * r2 / 120.0;
  } else {
    s = std::sin(r) / r;
  }
  return {std::cos(r), s * u(0), s * u(1), s * u(2)};
}

/// Principal logarithm of a unit quaternion, as a pure-imaginary 3-vector.
/// The rotation half-angle returned lies in [0, pi]; callers working in
/// exponential charts should stay clear of the antipode.
inline Eigen::Vector3d quat_log(const Quat& p) {
  double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  double theta = std::atan2(r, p.w);
  double k;  // theta / r, stable at r = 0
  if (r < 1e-9) {
    if (p.w < 0.0) throw std::domain_error("quat_log at the antipode is undefined");
    k = 1.0 / p.w;  // atan2(r,w)/r -> 1/w as r -> 0
  } else {
    k = theta / r;
  }
  return {k * p.x, k * p.y, k * p.z};
}

/// Partial derivatives d(quat_exp(u))/du_a, a = 0,1,2.
/// Removable singularity at |u| = 0 handled by series.
inline std::array<Quat, 3> quat_exp_jacobian(const Eigen::Vector3d& u) {
  double r = u.norm();
  double s, g;  // s = sin r / r,  g = (cos r - s) / r^2
  if (r < 1e-4) {
    double r2 = r * r;
    s = 1.0 - r2 / 6.0 + r2 * r2 / 120.0;
    g = -1.0 / 3.0 + r2 / 30.0;
  } else {
    s = std::sin(r) / r;
    g = (std::cos(r) - s) / (r * r);
  }
  std::array<Quat, 3> out;
  for (int a = 0; a < 3; ++a) {
    Quat d;
    d.w = -s * u(a);
    double dx[3];
    for (int b = 0; b < 3; ++b) dx[b] = g * u(a) * u(b) + (a == b ? s : 0.0);
    d.x = dx[0];
    d.y = dx[1];
    d.z = dx[2];
    out[a] = d;
  }
  return out;
}

}  // namespace gfb
