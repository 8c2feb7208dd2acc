#pragma once

/// @file chart.hpp
/// @brief Box charts with optional periodic coordinates, and coframe fields:
///        smooth maps p -> W(p) whose rows are the coefficient 1-forms of an
///        algebra-valued coframe against the chart coordinates.

#include <functional>
#include <random>
#include <string>

#include "gfb/lie_algebra.hpp"

namespace gfb {

/// Axis-aligned box, possibly periodic per coordinate. Periodic coordinates
/// identify lower with upper; all evaluation wraps them into [lower, upper).
struct ChartDomain {
  Vec lower;
  Vec upper;
  std::vector<bool> periodic;

  [[nodiscard]] int dim() const { return static_cast<int>(lower.size()); }
  [[nodiscard]] double period(int i) const { return upper(i) - lower(i); }

  /// Wrap periodic coordinates into [lower, upper); others untouched.
  [[nodiscard]] Vec wrap(Vec p) const;

  /// True if non-periodic coordinates lie within the box (inclusive).
  [[nodiscard]] bool contains(const Vec& p) const;

  /// Wrap-aware Euclidean distance between chart points.
  [[nodiscard]] double distance(const Vec& p, const Vec& q) const;

  /// Wrap-aware componentwise difference p - q (periodic components reduced
  /// to the nearest representative).
  [[nodiscard]] Vec delta(const Vec& p, const Vec& q) const;

  /// Uniform sample; non-periodic coordinates keep `margin` clear of the
  /// boundary so that finite difference stencils stay inside.
  [[nodiscard]] Vec sample(std::mt19937_64& rng, double margin) const;
};

/// An algebra-valued coframe on a chart. `semi` fixes the g ⋉ R^n splitting
/// (basis order: g first); `algebra` is the composite algebra the structure
/// equation is evaluated against. eval must be smooth and deterministic.
struct CoframeField {
  std::string name;
  ChartDomain domain;
  SemidirectData semi;
  LieAlgebra algebra;
  std::function<Mat(const Vec&)> eval;  // d x d coefficient matrix W(p)

  [[nodiscard]] int dim() const { return domain.dim(); }
  [[nodiscard]] int g_dim() const { return semi.g.dim(); }
};

/// W together with its inverse E; columns of E are the frame vector fields
/// (coordinate components of the dual frame).
struct FrameAtPoint {
  Vec point;
  Mat W;
  Mat E;
  double cond = 0.0;
};

/// Evaluate coframe and dual frame at p.
/// Throws std::domain_error if p is outside the chart or if cond(W) exceeds
/// `cond_cap` (the coframe degenerates numerically).
FrameAtPoint frame_at(const CoframeField& F, const Vec& p, double cond_cap = 1e6);

/// Central difference exterior derivative of the coframe rows:
/// out[A](mu, nu) = d_mu W(A, nu) - d_nu W(A, mu).
/// Throws std::domain_error if a stencil point would leave the chart through
/// a non-periodic face.
std::vector<Mat> exterior_derivative_at(const CoframeField& F, const Vec& p, double h = 1e-4);

/// Fundamental vector field of xi in g: the coordinate components of the
/// frame vector dual to (xi, 0). xi must have length g_dim.
Vec fundamental_vector(const CoframeField& F, const Vec& xi, const Vec& p);

/// Frame vector field of a full algebra element A (length dim): E(p) * A.
Vec frame_vector(const CoframeField& F, const Vec& A, const Vec& p);

}  // namespace gfb
