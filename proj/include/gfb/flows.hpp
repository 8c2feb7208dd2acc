#pragma once

/// @file flows.hpp
/// @brief Flows of fundamental vector fields, closure (period) detection,
///        path actions of algebra-valued schedules, and holonomy defects.
///
/// All integrators are fixed-step classical RK4: deterministic, no adaptive
/// state, accuracy O(dt^4). Leaving the chart through a non-periodic face is
/// a reported outcome, never an exception.

#include "gfb/chart.hpp"
#include "gfb/groups.hpp"

namespace gfb {

struct OrbitTrace {
  std::vector<double> t;
  std::vector<Vec> x;      ///< wrapped chart points
  bool left_domain = false;
  double exit_time = 0.0;  ///< last time still inside, when left_domain
};

/// Integrate the fundamental field of xi (in g) from p0 over [0, T].
/// steps is clamped to at least 16. T may be negative.
OrbitTrace flow(const CoframeField& F, const Vec& xi, const Vec& p0, double T, int steps = 256);

/// Endpoint-only variant (no trace allocation).
/// Throws std::domain_error if the flow leaves the chart.
Vec flow_endpoint(const CoframeField& F, const Vec& xi, const Vec& p0, double T, int steps = 64);

struct ClosureResult {
  bool found = false;
  double period = 0.0;    ///< refined first-return time
  double distance = 0.0;  ///< refined return distance
  bool left_domain = false;
};

/// First return of the orbit of xi to p0 within tol (wrap-aware chart
/// distance), scanning up to T_max. Candidate dips of the distance along a
/// coarse trace are refined by interval halving to 1e-8 in time; the first
/// candidate whose refined distance beats tol wins.
ClosureResult detect_closure(const CoframeField& F, const Vec& xi, const Vec& p0, double T_max,
                             double tol = 1e-4, int steps = 4096);

/// A piecewise-smooth map [0, T] -> g. `breaks` must ascend from 0 to T;
/// integration never steps across a break, so piecewise-constant schedules
/// integrate to machine-level agreement with group-side products.
struct AlgebraPath {
  double T = 1.0;
  std::vector<double> breaks;
  std::function<Vec(double)> value;

  static AlgebraPath constant(const Vec& a, double T);
  /// Piecewise-constant schedule from (duration, value) segments.
  static AlgebraPath schedule(const std::vector<std::pair<double, Vec>>& segments);
};

struct PathActionResult {
  Vec endpoint;
  bool completed = true;
  double exit_time = 0.0;
  OrbitTrace trace;
};

/// Solve c'(t) = E(c(t)) · (a(t), 0), c(0) = p0 — the development of the
/// algebra path a through the coframe. steps is the total budget, split
/// across pieces proportionally (at least 16 per piece).
PathActionResult integrate_path_action(const CoframeField& F, const AlgebraPath& a, const Vec& p0,
                                       int steps = 256);

struct HolonomyResult {
  double defect = 0.0;  ///< wrap-aware distance from endpoint back to p0
  bool completed = true;
  Vec endpoint;
};

/// Develop a loop schedule (caller guarantees it closes in the model group)
/// and report how far the chart endpoint misses p0. A nonzero defect on a
/// closing group loop is the obstruction to integrating the algebra action.
HolonomyResult holonomy_defect(const CoframeField& F, const Vec& p0, const AlgebraPath& loop,
                               int steps = 512);

}  // namespace gfb
