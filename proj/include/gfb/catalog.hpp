#pragma once

/// @file catalog.hpp
/// @brief The worked example catalog: named coframes with their model groups,
///        quotient presentations, canonical loops and invariant forms.
///
/// Entries:
///   flat_so2      Maurer-Cartan coframe of SO(2) ⋉ R^2 on the trivialised
///                 chart (x, y, z), z the fibre angle.
///   twisted_torus The half-angle quotient {±1}\(SO(2) ⋉ R^2) with the
///                 normalised generator: equivariance factor 1/2, off-centre
///                 orbits close only after two revolutions.
///   sphere_so3    so(3) read as so(2) ⋉ R^2 on an Euler-angle chart of
///                 SO(3): constant curvature block, zero torsion.
///   spin4_flat    Maurer-Cartan coframe of (Sp(1)xSp(1)) ⋉ R^4 in
///                 quaternion exponential charts.
///   spin4_mod_z2  Same total space quotiented on the left by
///                 K = {(1,1),(1,-1)}: order-2 isotropy at the origin class.
///   torsion_plane Abelian comparison algebra with a tunable torsion
///                 coefficient c (params["c"], default 0.5).
///   corrupted_flat flat_so2 with a hand-inserted fibre-coordinate term in
///                 the omega row; fails verticality at generic points.

#include <map>
#include <optional>

#include "gfb/chart.hpp"
#include "gfb/flows.hpp"
#include "gfb/groups.hpp"

namespace gfb {

struct CatalogEntry {
  std::string id;
  std::string description;
  CoframeField coframe;
  std::optional<GroupModel> group;    ///< model group acting on the right
  std::optional<PointAction> action;  ///< that action on presented points
  std::optional<QuotientPresentation> quotient;
  std::optional<Mat> eta;             ///< invariant form on R^n, when one exists
  std::optional<AlgebraPath> canonical_loop;  ///< closes in the model group
  Vec canonical_point;                ///< a generic base point for diagnostics
};

/// Build an entry by id; numeric parameters come from the CLI config
/// ("c" for torsion_plane). Throws std::invalid_argument for unknown ids or
/// parameters out of range.
CatalogEntry build_catalog_entry(const std::string& id,
                                 const std::map<std::string, double>& params = {});

std::vector<std::string> catalog_ids();

}  // namespace gfb
