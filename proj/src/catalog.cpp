#include "gfb/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gfb/quaternion.hpp"

namespace gfb {

namespace {

constexpr double kPi = std::numbers::pi;

Mat rot2(double a) {
  Mat m(2, 2);
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

ChartDomain box(std::initializer_list<double> lo, std::initializer_list<double> hi,
                std::initializer_list<bool> per) {
  ChartDomain d;
  d.lower = Vec(static_cast<int>(lo.size()));
  d.upper = Vec(static_cast<int>(hi.size()));
  int i = 0;
  for (double v : lo) d.lower(i++) = v;
  i = 0;
  for (double v : hi) d.upper(i++) = v;
  d.periodic.assign(per.begin(), per.end());
  return d;
}

SemidirectData so2_on_r2(double factor) {
  Mat J(2, 2);
  J << 0.0, -1.0, 1.0, 0.0;
  return {algebra_catalog("so2"), 2, {Mat(factor * J)}};
}

// ---------------------------------------------------------------------------
// flat_so2: Maurer-Cartan coframe of SO(2) ⋉ R^2 on the trivialised chart
// (x, y, z): w = (dz; R(-z) d(x,y)). Identity coefficients at the origin.
// ---------------------------------------------------------------------------
CatalogEntry make_flat(bool corrupted) {
  CatalogEntry e;
  e.id = corrupted ? "corrupted_flat" : "flat_so2";
  e.description = corrupted
                      ? "flat_so2 with a fibre-coordinate term injected into the omega row; "
                        "the structure residual acquires vertical components"
                      : "Maurer-Cartan coframe of SO(2) x R^2 (trivialised chart, fibre angle z)";
  CoframeField F;
  F.name = e.id;
  // the corrupted variant is not single-valued in z, so its chart is a box
  F.domain = corrupted ? box({-2.0, -2.0, 0.0}, {2.0, 2.0, 2.0 * kPi}, {false, false, false})
                       : box({-2.0, -2.0, 0.0}, {2.0, 2.0, 2.0 * kPi}, {false, false, true});
  F.semi = so2_on_r2(1.0);
  F.algebra = semidirect(F.semi);
  F.eval = [corrupted](const Vec& p) {
    double z = p(2);
    Mat W = Mat::Zero(3, 3);
    W(0, 2) = 1.0;
    if (corrupted) W(0, 0) = z;
    W(1, 0) = std::cos(z);
    W(1, 1) = std::sin(z);
    W(2, 0) = -std::sin(z);
    W(2, 1) = std::cos(z);
    return W;
  };
  e.coframe = F;
  Mat eta = Mat::Identity(2, 2);
  e.eta = eta;
  if (!corrupted) {
    e.group = group_catalog("so2");
    PointAction act;
    act.group = *e.group;
    act.lift = [](const Vec& p) { return p; };
    ChartDomain dom = F.domain;
    act.act = [dom](const Vec& p, const Vec& g) {
      Vec q = p;
      q(2) += g(0);
      return dom.wrap(q);
    };
    act.dist = [dom](const Vec& a, const Vec& b) { return dom.distance(a, b); };
    e.action = act;
    Vec xi = Vec::Ones(1);
    e.canonical_loop = AlgebraPath::schedule({{2.0 * kPi, xi}});
  }
  e.canonical_point = Vec(3);
  e.canonical_point << 0.3, -0.2, 0.0;
  if (corrupted) e.canonical_point << 0.5, 0.5, 2.0;
  return e;
}

// ---------------------------------------------------------------------------
// twisted_torus: the half-angle quotient {±1}\(SO(2) ⋉ R^2) with generator
// normalised to half speed. Chart (x, y, z), z = twice the fibre angle:
// w = (dz; d(x,y) + (1/2) J (x,y) dz). Flat, but the fundamental field of xi
// carries the 1/2 and off-centre orbits only close after two turns of z.
// ---------------------------------------------------------------------------
CatalogEntry make_twisted() {
  CatalogEntry e;
  e.id = "twisted_torus";
  e.description =
      "half-angle quotient of SO(2) x R^2; equivariance factor 1/2, off-centre "
      "orbits close after two revolutions";
  CoframeField F;
  F.name = e.id;
  F.domain = box({-2.0, -2.0, 0.0}, {2.0, 2.0, 2.0 * kPi}, {false, false, true});
  F.semi = so2_on_r2(0.5);
  F.algebra = semidirect(F.semi);
  F.eval = [](const Vec& p) {
    double x = p(0), y = p(1);
    Mat W = Mat::Zero(3, 3);
    W(0, 2) = 1.0;
    W(1, 0) = 1.0;
    W(1, 2) = -0.5 * y;
    W(2, 1) = 1.0;
    W(2, 2) = 0.5 * x;
    return W;
  };
  e.coframe = F;
  e.eta = Mat::Identity(2, 2);
  e.group = group_catalog("so2");
  PointAction act;
  act.group = *e.group;
  act.lift = [](const Vec& p) { return p; };
  ChartDomain dom = F.domain;
  act.act = [dom](const Vec& p, const Vec& g) {
    double th = g(0);
    Vec q(3);
    q.head(2) = rot2(-th) * p.head(2);
    q(2) = p(2) + 2.0 * th;
    return dom.wrap(q);
  };
  act.dist = [dom](const Vec& a, const Vec& b) { return dom.distance(a, b); };
  e.action = act;
  Vec xi = Vec::Ones(1);
  e.canonical_loop = AlgebraPath::schedule({{2.0 * kPi, xi}});
  e.canonical_point = Vec(3);
  e.canonical_point << 0.5, -0.3, 0.7;
  return e;
}

// ---------------------------------------------------------------------------
// sphere_so3: so(3) read through the split (xi, e1, e2) = (-L3, L1, L2) on a
// z-x-z Euler chart g = Rz(phi) Rx(theta) Rz(psi). The comparison algebra is
// so(2) ⋉ R^2 with rho(xi) = -J; the bracket [e1, e2] = -xi that the split
// forgets shows up as the constant curvature block Omega^xi_{12} = 1.
// ---------------------------------------------------------------------------
CatalogEntry make_sphere() {
  CatalogEntry e;
  e.id = "sphere_so3";
  e.description =
      "round-sphere frame bundle: so(3) against its so(2) x R^2 split on an "
      "Euler chart (theta kept clear of the poles)";
  CoframeField F;
  F.name = e.id;
  F.domain = box({0.0, 0.25, 0.0}, {2.0 * kPi, kPi - 0.25, 2.0 * kPi}, {true, false, true});
  F.semi = so2_on_r2(-1.0);
  F.algebra = semidirect(F.semi);
  F.eval = [](const Vec& p) {
    double th = p(1), ps = p(2);
    // Maurer-Cartan coefficients against the so(3) vee basis:
    //   sigma(d_phi) = (sin psi sin th, cos psi sin th, cos th)
    //   sigma(d_th)  = (cos psi, -sin psi, 0)
    //   sigma(d_psi) = (0, 0, 1)
    double x_phi[3] = {std::sin(ps) * std::sin(th), std::cos(ps) * std::sin(th), std::cos(th)};
    double x_th[3] = {std::cos(ps), -std::sin(ps), 0.0};
    double x_psi[3] = {0.0, 0.0, 1.0};
    Mat W(3, 3);
    // split rows: xi = -(third component), e1 = first, e2 = second
    W(0, 0) = -x_phi[2];
    W(0, 1) = -x_th[2];
    W(0, 2) = -x_psi[2];
    W(1, 0) = x_phi[0];
    W(1, 1) = x_th[0];
    W(1, 2) = x_psi[0];
    W(2, 0) = x_phi[1];
    W(2, 1) = x_th[1];
    W(2, 2) = x_psi[1];
    return W;
  };
  e.coframe = F;
  e.eta = Mat::Identity(2, 2);
  e.group = group_catalog("so3");
  PointAction act;
  act.group = *e.group;
  act.lift = [](const Vec& p) {
    double ph = p(0), th = p(1), ps = p(2);
    auto Rz = [](double a) {
      Eigen::Matrix3d m;
      m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
      return m;
    };
    Eigen::Matrix3d Rx;
    Rx << 1, 0, 0, 0, std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th);
    Eigen::Matrix3d g = Rz(ph) * Rx * Rz(ps);
    Vec v(9);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) v(3 * r + c) = g(r, c);
    return v;
  };
  GroupModel so3 = *e.group;
  act.act = [so3](const Vec& rep, const Vec& g) { return so3.mul(rep, g); };
  act.dist = [so3](const Vec& a, const Vec& b) { return so3.dist(a, b); };
  e.action = act;
  Vec xi = Vec::Ones(1);
  e.canonical_loop = AlgebraPath::schedule({{2.0 * kPi, xi}});
  e.canonical_point = Vec(3);
  e.canonical_point << 0.7, 1.1, 0.4;
  return e;
}

// ---------------------------------------------------------------------------
// spin4 charts: Sp(1) x Sp(1) in quaternion exponential coordinates
// (u, w) with |u|, |w| < 0.9 plus a translation block x in R^4.
// w-form: (p̄ dp, q̄ dq, dx + rho(p̄ dp, q̄ dq) x) with
// rho(a, b) z = a z - z b (differential of lambda(p,q) z = p z q̄).
// ---------------------------------------------------------------------------
Mat spin4_coframe_matrix(const Vec& p) {
  Eigen::Vector3d u = p.segment<3>(0), w = p.segment<3>(3);
  Eigen::Vector4d x = p.segment<4>(6);
  Quat P = quat_exp(u), Q = quat_exp(w);
  auto dP = quat_exp_jacobian(u);
  auto dQ = quat_exp_jacobian(w);
  Quat xq = Quat::from_coeffs(x);

  Mat W = Mat::Zero(10, 10);
  for (int a = 0; a < 3; ++a) {
    Quat s = P.conj() * dP[a];  // pure imaginary up to roundoff
    W(0, a) = s.x;
    W(1, a) = s.y;
    W(2, a) = s.z;
    Quat sim{0.0, s.x, s.y, s.z};
    Eigen::Vector4d col = (sim * xq).coeffs();  // rho(l-part) x
    for (int r = 0; r < 4; ++r) W(6 + r, a) = col(r);

    Quat t = Q.conj() * dQ[a];
    W(3, 3 + a) = t.x;
    W(4, 3 + a) = t.y;
    W(5, 3 + a) = t.z;
    Quat tim{0.0, t.x, t.y, t.z};
    Eigen::Vector4d colr = (xq * tim).coeffs();  // rho(r-part) x = -x t
    for (int r = 0; r < 4; ++r) W(6 + r, 3 + a) = -colr(r);
  }
  for (int r = 0; r < 4; ++r) W(6 + r, 6 + r) = 1.0;
  return W;
}

Vec lift_spin4(const Vec& p) {
  Quat P = quat_exp(Eigen::Vector3d(p.segment<3>(0)));
  Quat Q = quat_exp(Eigen::Vector3d(p.segment<3>(3)));
  Vec rep(12);
  rep.segment<4>(0) = P.coeffs();
  rep.segment<4>(4) = Q.coeffs();
  rep.segment<4>(8) = p.segment<4>(6);
  return rep;
}

CatalogEntry make_spin4(bool quotient) {
  CatalogEntry e;
  e.id = quotient ? "spin4_mod_z2" : "spin4_flat";
  e.description = quotient
                      ? "left quotient of (Sp(1)xSp(1)) x R^4 by K = {(1,1),(1,-1)}: the "
                        "origin class keeps an order-2 isotropy acting by parity"
                      : "Maurer-Cartan coframe of (Sp(1)xSp(1)) x R^4 in exponential charts";
  CoframeField F;
  F.name = e.id;
  F.domain = box({-0.9, -0.9, -0.9, -0.9, -0.9, -0.9, -2.0, -2.0, -2.0, -2.0},
                 {0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 2.0, 2.0, 2.0, 2.0},
                 {false, false, false, false, false, false, false, false, false, false});
  F.semi = semidirect_catalog("spin4_semi_r4");
  F.algebra = semidirect(F.semi);
  F.eval = spin4_coframe_matrix;
  e.coframe = F;
  e.eta = Mat::Identity(4, 4);
  e.group = group_catalog("spin4");

  GroupModel total = group_catalog("spin4_r4");
  GroupModel factor = *e.group;
  auto embed = [factor, total](const Vec& g) {
    Vec t = Vec::Zero(total.elem_dim);
    t.head(factor.elem_dim) = g;
    return t;
  };

  if (quotient) {
    QuotientPresentation Q;
    Q.total = total;
    Q.factor = factor;
    Vec gamma5 = total.identity;
    gamma5(4) = -1.0;  // q-factor = -1
    Q.K = {total.identity, gamma5};
    e.quotient = Q;

    PointAction act;
    act.group = factor;
    act.lift = lift_spin4;
    act.act = [total, embed](const Vec& rep, const Vec& g) { return total.mul(rep, embed(g)); };
    QuotientPresentation Qc = Q;
    act.dist = [Qc](const Vec& a, const Vec& b) { return Qc.class_dist(a, b); };
    e.action = act;
  } else {
    PointAction act;
    act.group = factor;
    act.lift = lift_spin4;
    act.act = [total, embed](const Vec& rep, const Vec& g) { return total.mul(rep, embed(g)); };
    GroupModel tc = total;
    act.dist = [tc](const Vec& a, const Vec& b) { return tc.dist(a, b); };
    e.action = act;
  }

  Vec a = Vec::Zero(6);
  a << 0.6, 0.0, 0.0, 0.0, 0.3, 0.0;
  e.canonical_loop = AlgebraPath::schedule({{0.5, a}, {0.5, Vec(-a)}});
  e.canonical_point = Vec::Zero(10);
  if (!quotient) {
    e.canonical_point << 0.1, -0.05, 0.08, 0.02, 0.1, -0.07, 0.3, -0.2, 0.1, 0.4;
  }
  return e;
}

// ---------------------------------------------------------------------------
// torsion_plane: abelian comparison algebra, coframe (dz; dx + c x dy; dy).
// The residual is exactly c dx∧dy in the e1 slot: pure torsion, linear in c.
// ---------------------------------------------------------------------------
CatalogEntry make_torsion(double c) {
  CatalogEntry e;
  e.id = "torsion_plane";
  e.description = "abelian model with tunable torsion coefficient c (pure Theta, flat Omega)";
  CoframeField F;
  F.name = e.id;
  F.domain = box({-2.0, -2.0, 0.0}, {2.0, 2.0, 2.0 * kPi}, {false, false, true});
  F.semi = so2_on_r2(0.0);
  F.algebra = semidirect(F.semi);
  F.eval = [c](const Vec& p) {
    double x = p(0);
    Mat W = Mat::Zero(3, 3);
    W(0, 2) = 1.0;
    W(1, 0) = 1.0;
    W(1, 1) = c * x;
    W(2, 1) = 1.0;
    return W;
  };
  e.coframe = F;
  e.eta = Mat::Identity(2, 2);
  Vec xi = Vec::Ones(1);
  e.canonical_loop = AlgebraPath::schedule({{2.0 * kPi, xi}});
  e.canonical_point = Vec(3);
  e.canonical_point << 0.4, -0.6, 1.0;
  return e;
}

}  // namespace

CatalogEntry build_catalog_entry(const std::string& id,
                                 const std::map<std::string, double>& params) {
  auto param = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (id == "flat_so2") return make_flat(false);
  if (id == "corrupted_flat") return make_flat(true);
  if (id == "twisted_torus") return make_twisted();
  if (id == "sphere_so3") return make_sphere();
  if (id == "spin4_flat") return make_spin4(false);
  if (id == "spin4_mod_z2") return make_spin4(true);
  if (id == "torsion_plane") {
    double c = param("c", 0.5);
    if (!(c >= 0.0) || c > 10.0)
      throw std::invalid_argument("torsion_plane: parameter c out of range [0, 10]");
    return make_torsion(c);
  }
  throw std::invalid_argument("unknown catalog entry: " + id);
}

std::vector<std::string> catalog_ids() {
  return {"flat_so2",     "twisted_torus", "sphere_so3",    "spin4_flat",
          "spin4_mod_z2", "torsion_plane", "corrupted_flat"};
}

}  // namespace gfb
