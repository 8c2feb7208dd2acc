#pragma once

/// @file lie_algebra.hpp
/// @brief Finite dimensional Lie algebras given by structure constants, and
///        semidirect sums g ⋉ R^n built from a representation rho of g.
///
/// Conventions:
///  * basis order in a semidirect sum is "g first, then R^n";
///  * structure constants satisfy [e_B, e_C] = sum_A c^A_{BC} e_A with
///    c^A_{BC} = -c^A_{CB};
///  * elements are plain coefficient vectors (value semantics throughout).

#include <functional>
#include <string>
#include <vector>

#include "gfb/linalg.hpp"

namespace gfb {

using AlgebraElement = Vec;  ///< coefficient vector against the chosen basis

class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Build from structure constants; verifies antisymmetry exactly and the
  /// Jacobi identity to 1e-12 (throws std::invalid_argument otherwise).
  LieAlgebra(int dim, std::vector<double> c, std::vector<std::string> labels);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

  /// c^A_{BC}
  [[nodiscard]] double c(int A, int B, int C) const {
    return c_[(static_cast<size_t>(A) * dim_ + B) * dim_ + C];
  }

  /// Matrix of ad_x acting on coefficient vectors: (ad_x)^A_B = sum_i x^i c^A_{iB}.
  [[nodiscard]] Mat ad(const AlgebraElement& x) const;

 private:
  int dim_ = 0;
  std::vector<double> c_;  // flattened c[A][B][C]
  std::vector<std::string> labels_;
};

/// [x, y] in coefficients.
AlgebraElement bracket(const LieAlgebra& L, const AlgebraElement& x, const AlgebraElement& y);

/// Max-abs Jacobi residual over all basis triples (0 for a genuine algebra).
double jacobi_residual(const LieAlgebra& L);

/// A semidirect sum datum: base algebra g, fibre dimension n, and the
/// representation matrices rho[i] of the g basis vectors on R^n.
struct SemidirectData {
  LieAlgebra g;
  int n = 0;
  std::vector<Mat> rho;  // g.dim() matrices, each n x n
};

/// Max-abs deviation of rho from being a homomorphism:
/// max_{ij} |rho([xi_i, xi_j]) - [rho_i, rho_j]|.
double representation_residual(const SemidirectData& sd);

/// Build the semidirect sum g ⋉ R^n. Mixed brackets are
/// [xi_i, e_b] = sum_a rho_i[a][b] e_a; translations commute.
/// Throws std::invalid_argument if rho fails the homomorphism property
/// (residual > 1e-8) or dimensions are inconsistent.
LieAlgebra semidirect(const SemidirectData& sd, const std::string& label_prefix = "e");

/// Coefficients of the 2-form [w ∧ w] at a point, given the coefficient
/// matrix W (rows = algebra basis index A, columns = chart coordinate mu):
/// out[A](mu, nu) = 2 * sum_{BC} c^A_{BC} W(B, mu) W(C, nu).
/// Contracting out[A] with vectors X, Y yields 2*[w(X), w(Y)]^A, i.e. the
/// value of the bracket-wedge [w ∧ w](X,Y) = [w(X),w(Y)] - [w(Y),w(X)].
std::vector<Mat> wedge_bracket_at(const LieAlgebra& L, const Mat& W);

/// Named algebras used by the example catalog and by test oracles.
/// Known ids: so2, so3, spin3, spin4, so2_semi_r2, spin4_semi_r4,
/// so3_as_so2_semi_r2. Throws std::invalid_argument for unknown ids.
LieAlgebra algebra_catalog(const std::string& id);

/// Semidirect data for the ids that are semidirect sums:
/// so2_semi_r2 (rho(xi) = J, the +90 degree generator) and spin4_semi_r4
/// (rho = differential of (p,q)·z = p z q̄, i.e. rho(u,w) z = u z - z w).
SemidirectData semidirect_catalog(const std::string& id);

}  // namespace gfb
