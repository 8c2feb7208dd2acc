#pragma once

/// @file curvature.hpp
/// @brief Curvature/torsion coefficient tables, covariant exterior
///        derivatives, Bianchi and Ricci identity residuals, and the
///        Einstein-style panel built from an invariant form eta.

#include "gfb/cartan.hpp"

namespace gfb {

/// Omega^i_{bc}: per g index i, the n x n horizontal block of the structure
/// residual (antisymmetric in bc).
std::vector<Mat> curvature_at(const CoframeField& F, const Vec& p, double h = 1e-4);

/// Theta^a_{bc}: per translation index a, the n x n horizontal block.
std::vector<Mat> torsion_at(const CoframeField& F, const Vec& p, double h = 1e-4);

/// Covariant exterior derivative d^w psi = d psi + rho(omega) ∧ psi, where
/// omega is the g part of the coframe and rho_V the g action on the value
/// space V (one matrix per g basis vector).
///
/// Degree 0: psi(p) is an m-vector; result is m x d (value x coordinate).
Mat covariant_exterior_derivative(const CoframeField& F,
                                  const std::function<Vec(const Vec&)>& psi,
                                  const std::vector<Mat>& rho_V, const Vec& p, double h = 1e-3);

/// Degree 1: psi(p) is m x d; result is per value index an antisymmetric
/// d x d coefficient matrix.
std::vector<Mat> covariant_exterior_derivative(const CoframeField& F,
                                               const std::function<Mat(const Vec&)>& psi,
                                               const std::vector<Mat>& rho_V, const Vec& p,
                                               double h = 1e-3);

/// Degree 2: psi(p) is per value index an antisymmetric d x d matrix; result
/// is out[m][mu](nu, lam), totally antisymmetric 3-form coefficients.
std::vector<std::vector<Mat>> covariant_exterior_derivative(
    const CoframeField& F, const std::function<std::vector<Mat>(const Vec&)>& psi,
    const std::vector<Mat>& rho_V, const Vec& p, double h = 1e-3);

/// Max-abs of d^w Omega at p, with Omega the g-valued residual 2-form in
/// coordinate indices and rho = ad of g. Vanishes identically for a Cartan
/// form (second Bianchi identity); finite differencing leaves O(h^2).
double bianchi_residual(const CoframeField& F, const Vec& p, double h = 1e-3);

/// Max-abs of (d^w d^w psi - rho(Omega) psi) at p for a V-valued function
/// psi — the Ricci identity that curvature measures.
double ricci_identity_residual(const CoframeField& F, const std::function<Vec(const Vec&)>& psi,
                               const std::vector<Mat>& rho_V, const Vec& p, double h = 1e-3);

struct CurvaturePanel {
  Vec point;
  Mat eta;                 ///< invariant form used for raising/contracting
  std::vector<Mat> omega;  ///< Omega^i_{bc}
  std::vector<Mat> theta;  ///< Theta^a_{bc}
  std::vector<Mat> riem;   ///< riem[b*n+c] = sum_i Omega^i_{bc} rho_i (n x n)
  Mat ric;                 ///< Ric_{dc} = sum_{i,b} Omega^i_{bc} (rho_i)_{bd}
  double scal = 0.0;       ///< eta^{da} Ric_{da}
  Mat ein;                 ///< Ric - 1/2 Scal eta
  double vertical_violation = 0.0;
};

/// Assemble the panel at p. Validates that eta is invariant under the g
/// action (rho_i^T eta + eta rho_i = 0 within 1e-10 for every i; throws
/// std::invalid_argument naming the violating index otherwise).
CurvaturePanel einstein_panel(const CoframeField& F, const Vec& p, const Mat& eta,
                              double h = 1e-4);

}  // namespace gfb
