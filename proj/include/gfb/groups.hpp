#pragma once

/// @file groups.hpp
/// @brief Concrete model groups (SO(2), Sp(1)xSp(1), their semidirect
///        products with translations), quotient presentations, and isotropy
///        computations.
///
/// Group elements are plain coefficient vectors so that models compose
/// generically: SO(2) is an angle, Sp(1)xSp(1) a pair of unit quaternions
/// (8 coefficients), a semidirect element is [group part; translation part].

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "gfb/linalg.hpp"
#include "gfb/quaternion.hpp"

namespace gfb {

struct GroupModel {
  std::string id;
  int elem_dim = 0;  ///< length of an element coefficient vector
  int alg_dim = 0;   ///< Lie algebra dimension (local perturbation directions)
  int n = 0;         ///< dimension of the vector space V the group acts on (0 if none)
  Vec identity;
  std::function<Vec(const Vec&, const Vec&)> mul;
  std::function<Vec(const Vec&)> inv;
  std::function<Vec(const Vec&, const Vec&)> act_on_V;   ///< left action (g, v) -> g·v
  std::function<Vec(const Vec&, const Vec&)> exp_nudge;  ///< (g, delta) -> g · exp(delta)
  std::function<Vec(std::mt19937_64&)> sample;           ///< invariant-ish random element
  std::function<double(const Vec&, const Vec&)> dist;
};

/// Matrix of v -> act_on_V(g, v), built column by column.
Mat action_matrix(const GroupModel& G, const Vec& g);

/// Max-abs group axiom residual over `trials` seeded random triples
/// (associativity, identity, inverses). Catalog models sit at roundoff.
double group_axiom_residual(const GroupModel& G, int trials = 100, std::uint64_t seed = 7);

/// The quaternionic action of Sp(1)xSp(1) on R^4 = H:  (p, q) · z = p̄ z q.
/// pq holds the pair as 8 coefficients (p; q); both factors must be unit
/// quaternions to 1e-10 (throws std::invalid_argument otherwise).
/// This is the operation the semidirect group law applies to translation
/// parts; it is the inverse of the left action λ(p,q) z = p z q̄.
Eigen::Vector4d quaternion_action(const Vec& pq, const Eigen::Vector4d& z);

/// 4x4 matrix of z -> quaternion_action(pq, z).
Eigen::Matrix4d quaternion_action_matrix(const Vec& pq);

/// Semidirect group law on pairs a = [g; x], b = [h; y] over the factor
/// model G: (g, x)(h, y) = (g h, h^{-1}·x + y).
Vec semidirect_mul(const GroupModel& G, const Vec& a, const Vec& b);

/// Full group model of G ⋉ V from a factor model with an action on V.
GroupModel semidirect_group(const GroupModel& G);

/// Model groups: "so2" (angle mod 2pi, acts on R^2 by rotation),
/// "spin4" (unit quaternion pairs, acts on R^4 by λ(p,q) z = p z q̄),
/// "so3" (3x3 rotation matrices, flattened row-major; no linear action slot),
/// plus semidirect totals "so2_r2" and "spin4_r4".
GroupModel group_catalog(const std::string& id);

/// A left quotient K\(G ⋉ V) with K a finite central subgroup of G.
struct QuotientPresentation {
  GroupModel total;    ///< G ⋉ V
  GroupModel factor;   ///< G, acting on classes by right multiplication
  std::vector<Vec> K;  ///< elements of `total` generating the identification
  /// distance between classes: min over K of total-element distance
  [[nodiscard]] double class_dist(const Vec& a, const Vec& b) const;
};

struct IsotropyFinding {
  Vec base_point;              ///< chart point the scan was rooted at
  int order = 0;
  std::vector<Vec> elements;   ///< elements of the acting (factor) group
  std::vector<Mat> v_actions;  ///< induced matrices on V (if the group acts on V)
  double residual = 0.0;       ///< worst fixing distance among accepted elements
  bool closed_under_product = true;
};

/// Exact isotropy of the right factor action at the class of `h` (an element
/// of Q.total): g fixes [h] iff h^{-1} k h has vanishing translation part for
/// some k in K; the isotropy element is its factor part. `tol` bounds the
/// accepted translation residue.
IsotropyFinding quotient_isotropy(const QuotientPresentation& Q, const Vec& h, double tol = 1e-9);

/// A group action on presented points (catalog entries provide these).
struct PointAction {
  GroupModel group;
  std::function<Vec(const Vec&)> lift;             ///< chart point -> representative
  std::function<Vec(const Vec&, const Vec&)> act;  ///< (representative, g) -> representative
  std::function<double(const Vec&, const Vec&)> dist;
};

struct IsotropyScanOptions {
  int samples = 512;
  int refine_top = 32;
  int max_refine_iters = 300;
  double tol = 1e-3;
  std::uint64_t seed = 1;
};

/// Randomised isotropy search: sample group elements, keep the best movers,
/// refine each by deterministic pattern search in the group, accept fixers
/// within tol, deduplicate and report. Reproducible for a fixed seed.
IsotropyFinding isotropy_scan(const PointAction& A, const Vec& chart_point,
                              const IsotropyScanOptions& opts = {});

enum class OrbitTypeOrder { Equal, FirstLarger, SecondLarger, Incomparable };

/// Compare orbit types through their isotropy findings: a strictly smaller
/// isotropy group means a strictly larger orbit type. Element sets are
/// matched within `tol` using the group metric.
OrbitTypeOrder orbit_type_compare(const GroupModel& G, const IsotropyFinding& a,
                                  const IsotropyFinding& b, double tol = 1e-2);

}  // namespace gfb
