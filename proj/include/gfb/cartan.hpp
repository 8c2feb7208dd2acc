#pragma once

/// @file cartan.hpp
/// @brief Structure-equation diagnostics for algebra-valued coframes.
///
/// For a coframe w with coefficient matrix W the structure residual is
///   R^A = (dW)^A + 1/2 [w ∧ w]^A,
/// re-expressed against the dual frame as R_frame^A_{BC} = R^A(ē_B, ē_C).
/// A generalised Cartan form is characterised by R_frame vanishing whenever
/// either lower index is vertical (touches the g part); the purely
/// horizontal block is the curvature/torsion coefficient table.

#include <cstdint>
#include <string>

#include "gfb/chart.hpp"

namespace gfb {

struct StructureResidual {
  Vec point;
  double cond = 0.0;
  std::vector<Mat> R_coord;  ///< per algebra index A: coefficients over (mu, nu)
  std::vector<Mat> R_frame;  ///< per algebra index A: coefficients over frame pairs
  std::vector<Mat> omega;    ///< per g index i: n x n horizontal block
  std::vector<Mat> theta;    ///< per translation index a: n x n horizontal block
  double vertical_violation = 0.0;  ///< max |R_frame^A_{BC}|, B or C vertical
  double frame_residual_max = 0.0;  ///< max |R_frame| over all entries
};

StructureResidual structure_residual_at(const CoframeField& F, const Vec& p, double h = 1e-4,
                                        double cond_cap = 1e6);

/// Max-abs of the residual 2-form contracted with the fundamental vector of
/// xi (in frame indices). Zero characterises horizontality of the residual
/// along xi.
double horizontality_check(const CoframeField& F, const Vec& xi, const Vec& p, double h = 1e-4);

/// Max-abs of (L_{xi-bar} w + ad_xi ∘ w) at p, contracted into frame indices.
/// The Lie derivative is evaluated by differencing the coframe pulled back
/// along the actual integrated flow of the fundamental field (flow_eps), with
/// flow-map Jacobians from central differences (h). Identically equal to
/// horizontality_check up to discretisation error.
double equivariance_residual(const CoframeField& F, const Vec& xi, const Vec& p,
                             double flow_eps = 1e-2, double h = 1e-3);

struct BracketCheck {
  Vec estimated;   ///< [a-bar, b-bar](p) from differentiated vector fields
  Vec expected;    ///< E(p) · [a, b]
  double max_err;  ///< max-abs difference
};

/// Commutator test for frame vector fields: estimates [a-bar, b-bar] at p by
/// finite differencing the field Jacobians and compares against the frame
/// vector of the algebra bracket [a, b]. a, b are full algebra elements.
BracketCheck bracket_compatibility_check(const CoframeField& F, const Vec& a, const Vec& b,
                                         const Vec& p, double h = 1e-4);

struct CartanScanOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  double h = 1e-4;
  double tol = 1e-6;
  double cond_cap = 1e6;
  int threads = 0;  ///< 0 = GFB_THREADS env or hardware default
};

struct CartanScanReport {
  std::string example;
  int samples = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  double tol = 0.0;
  bool pass = false;
  double worst_violation = 0.0;
  Vec worst_point;
  double worst_cond = 0.0;
  int eval_failures = 0;  ///< points where the frame degenerated (counted as failures)
  double omega_max_abs = 0.0;
  double omega_mean_abs = 0.0;
  std::vector<double> omega_row_max;  ///< per g basis row
  double elapsed_seconds = 0.0;
};

/// Monte Carlo sweep of the vertical violation over the chart. Sampling is
/// seeded and reproducible; worker threads change nothing about the result.
/// Never throws on a failing coframe — failure is data in the report.
CartanScanReport is_cartan_form(const CoframeField& F, const CartanScanOptions& opts = {});

}  // namespace gfb
