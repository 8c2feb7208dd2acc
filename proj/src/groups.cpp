#include "gfb/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gfb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double t = std::fmod(a, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

Quat quat_of(const Vec& v, int offset) { return {v(offset), v(offset + 1), v(offset + 2), v(offset + 3)}; }

void put_quat(Vec& v, int offset, const Quat& q) {
  v(offset) = q.w;
  v(offset + 1) = q.x;
  v(offset + 2) = q.y;
  v(offset + 3) = q.z;
}

void require_unit(const Quat& q, const char* what) {
  if (std::abs(q.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(what) + ": quaternion is not unit norm");
}

}  // namespace

Mat action_matrix(const GroupModel& G, const Vec& g) {
  if (!G.act_on_V || G.n == 0)
    throw std::invalid_argument("action_matrix: group " + G.id + " has no linear action");
  Mat m(G.n, G.n);
  for (int i = 0; i < G.n; ++i) {
    Vec e = Vec::Zero(G.n);
    e(i) = 1.0;
    m.col(i) = G.act_on_V(g, e);
  }
  return m;
}

double group_axiom_residual(const GroupModel& G, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    Vec a = G.sample(rng), b = G.sample(rng), c = G.sample(rng);
    worst = std::max(worst, G.dist(G.mul(a, G.mul(b, c)), G.mul(G.mul(a, b), c)));
    worst = std::max(worst, G.dist(G.mul(a, G.identity), a));
    worst = std::max(worst, G.dist(G.mul(G.identity, a), a));
    worst = std::max(worst, G.dist(G.mul(a, G.inv(a)), G.identity));
    worst = std::max(worst, G.dist(G.mul(G.inv(a), a), G.identity));
  }
  return worst;
}

Eigen::Vector4d quaternion_action(const Vec& pq, const Eigen::Vector4d& z) {
  if (pq.size() != 8) throw std::invalid_argument("quaternion_action: expected a (p, q) pair");
  Quat p = quat_of(pq, 0), q = quat_of(pq, 4);
  require_unit(p, "quaternion_action");
  require_unit(q, "quaternion_action");
  Quat zq = Quat::from_coeffs(z);
  return (p.conj() * zq * q).coeffs();
}

Eigen::Matrix4d quaternion_action_matrix(const Vec& pq) {
  Quat p = quat_of(pq, 0), q = quat_of(pq, 4);
  require_unit(p, "quaternion_action_matrix");
  require_unit(q, "quaternion_action_matrix");
  return left_mul_matrix(p.conj()) * right_mul_matrix(q);
}

Vec semidirect_mul(const GroupModel& G, const Vec& a, const Vec& b) {
  const int gd = G.elem_dim, n = G.n;
  if (a.size() != gd + n || b.size() != gd + n)
    throw std::invalid_argument("semidirect_mul: element size mismatch");
  Vec ga = a.head(gd), gb = b.head(gd);
  Vec out(gd + n);
  out.head(gd) = G.mul(ga, gb);
  out.tail(n) = G.act_on_V(G.inv(gb), a.tail(n)) + b.tail(n);
  return out;
}

GroupModel semidirect_group(const GroupModel& G) {
  if (!G.act_on_V || G.n == 0)
    throw std::invalid_argument("semidirect_group: factor must act on V");
  GroupModel T;
  T.id = G.id + "_semi_r" + std::to_string(G.n);
  T.elem_dim = G.elem_dim + G.n;
  T.alg_dim = G.alg_dim + G.n;
  T.n = 0;
  T.identity = Vec::Zero(T.elem_dim);
  T.identity.head(G.elem_dim) = G.identity;
  T.mul = [G](const Vec& a, const Vec& b) { return semidirect_mul(G, a, b); };
  T.inv = [G](const Vec& a) {
    Vec gi = G.inv(a.head(G.elem_dim));
    Vec out(a.size());
    out.head(G.elem_dim) = gi;
    out.tail(G.n) = -G.act_on_V(a.head(G.elem_dim), a.tail(G.n));
    return out;
  };
  T.exp_nudge = [G, T](const Vec& a, const Vec& delta) {
    Vec step = Vec::Zero(T.elem_dim);
    step.head(G.elem_dim) = G.exp_nudge(G.identity, delta.head(G.alg_dim));
    step.tail(G.n) = delta.tail(G.n);
    return T.mul(a, step);
  };
  T.sample = [G](std::mt19937_64& rng) {
    Vec g = G.sample(rng);
    std::normal_distribution<double> N(0.0, 1.0);
    Vec out(g.size() + G.n);
    out.head(g.size()) = g;
    for (int i = 0; i < G.n; ++i) out(g.size() + i) = N(rng);
    return out;
  };
  T.dist = [G](const Vec& a, const Vec& b) {
    double dg = G.dist(a.head(G.elem_dim), b.head(G.elem_dim));
    double dx = (a.tail(G.n) - b.tail(G.n)).norm();
    return std::sqrt(dg * dg + dx * dx);
  };
  return T;
}

GroupModel group_catalog(const std::string& id) {
  if (id == "so2") {
    GroupModel G;
    G.id = "so2";
    G.elem_dim = 1;
    G.alg_dim = 1;
    G.n = 2;
    G.identity = Vec::Zero(1);
    G.mul = [](const Vec& a, const Vec& b) {
      Vec out(1);
      out(0) = wrap_angle(a(0) + b(0));
      return out;
    };
    G.inv = [](const Vec& a) {
      Vec out(1);
      out(0) = wrap_angle(-a(0));
      return out;
    };
    G.act_on_V = [](const Vec& g, const Vec& v) {
      double c = std::cos(g(0)), s = std::sin(g(0));
      Vec out(2);
      out(0) = c * v(0) - s * v(1);
      out(1) = s * v(0) + c * v(1);
      return out;
    };
    G.exp_nudge = [G](const Vec& a, const Vec& d) { return G.mul(a, d); };
    G.sample = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> U(0.0, kTwoPi);
      Vec out(1);
      out(0) = U(rng);
      return out;
    };
    G.dist = [](const Vec& a, const Vec& b) { return std::abs(std::remainder(a(0) - b(0), kTwoPi)); };
    return G;
  }

  if (id == "spin4") {
    GroupModel G;
    G.id = "spin4";
    G.elem_dim = 8;
    G.alg_dim = 6;
    G.n = 4;
    G.identity = Vec::Zero(8);
    G.identity(0) = 1.0;
    G.identity(4) = 1.0;
    G.mul = [](const Vec& a, const Vec& b) {
      Quat pa = quat_of(a, 0), qa = quat_of(a, 4);
      Quat pb = quat_of(b, 0), qb = quat_of(b, 4);
      Vec out(8);
      put_quat(out, 0, (pa * pb).normalized());
      put_quat(out, 4, (qa * qb).normalized());
      return out;
    };
    G.inv = [](const Vec& a) {
      Vec out(8);
      put_quat(out, 0, quat_of(a, 0).conj());
      put_quat(out, 4, quat_of(a, 4).conj());
      return out;
    };
    // left action lambda(p, q) z = p z q̄ — the differential of this action is
    // the spin4_semi_r4 representation
    G.act_on_V = [](const Vec& g, const Vec& v) {
      Quat p = quat_of(g, 0), q = quat_of(g, 4);
      Quat z{v(0), v(1), v(2), v(3)};
      Quat r = p * z * q.conj();
      Vec out(4);
      out << r.w, r.x, r.y, r.z;
      return out;
    };
    G.exp_nudge = [G](const Vec& a, const Vec& d) {
      Vec step(8);
      put_quat(step, 0, quat_exp(Eigen::Vector3d(d(0), d(1), d(2))));
      put_quat(step, 4, quat_exp(Eigen::Vector3d(d(3), d(4), d(5))));
      return G.mul(a, step);
    };
    G.sample = [](std::mt19937_64& rng) {
      std::normal_distribution<double> N(0.0, 1.0);
      Vec out(8);
      for (int rep = 0; rep < 2; ++rep) {
        Quat q{N(rng), N(rng), N(rng), N(rng)};
        put_quat(out, 4 * rep, q.normalized());
      }
      return out;
    };
    G.dist = [](const Vec& a, const Vec& b) { return (a - b).norm(); };
    return G;
  }

  if (id == "so3") {
    GroupModel G;
    G.id = "so3";
    G.elem_dim = 9;  // row-major 3x3
    G.alg_dim = 3;
    G.n = 3;
    Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    G.identity = Eigen::Map<const Vec>(I.data(), 9);  // symmetric, layout-safe
    auto as_mat = [](const Vec& v) {
      Eigen::Matrix3d m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = v(3 * r + c);
      return m;
    };
    auto as_vec = [](const Eigen::Matrix3d& m) {
      Vec v(9);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) v(3 * r + c) = m(r, c);
      return v;
    };
    G.mul = [as_mat, as_vec](const Vec& a, const Vec& b) { return as_vec(as_mat(a) * as_mat(b)); };
    G.inv = [as_mat, as_vec](const Vec& a) { return as_vec(as_mat(a).transpose()); };
    G.act_on_V = [as_mat](const Vec& g, const Vec& v) { return Vec(as_mat(g) * v); };
    G.exp_nudge = [as_mat, as_vec](const Vec& a, const Vec& d) {
      Eigen::Matrix3d K;
      K << 0, -d(2), d(1), d(2), 0, -d(0), -d(1), d(0), 0;
      double ang = d.norm();
      Eigen::Matrix3d E = Eigen::Matrix3d::Identity();
      if (ang > 1e-12) {
        E += std::sin(ang) / ang * K + (1.0 - std::cos(ang)) / (ang * ang) * (K * K);
      } else {
        E += K;
      }
      return as_vec(as_mat(a) * E);
    };
    G.sample = [as_vec](std::mt19937_64& rng) {
      std::normal_distribution<double> N(0.0, 1.0);
      Quat q{N(rng), N(rng), N(rng), N(rng)};
      q = q.normalized();
      // rotation matrix of the unit quaternion
      Eigen::Matrix3d m;
      m << 1 - 2 * (q.y * q.y + q.z * q.z), 2 * (q.x * q.y - q.z * q.w), 2 * (q.x * q.z + q.y * q.w),
          2 * (q.x * q.y + q.z * q.w), 1 - 2 * (q.x * q.x + q.z * q.z), 2 * (q.y * q.z - q.x * q.w),
          2 * (q.x * q.z - q.y * q.w), 2 * (q.y * q.z + q.x * q.w), 1 - 2 * (q.x * q.x + q.y * q.y);
      return as_vec(m);
    };
    G.dist = [](const Vec& a, const Vec& b) { return (a - b).norm(); };
    return G;
  }

  if (id == "so2_r2") return semidirect_group(group_catalog("so2"));
  if (id == "spin4_r4") return semidirect_group(group_catalog("spin4"));

  throw std::invalid_argument("unknown group id: " + id);
}

double QuotientPresentation::class_dist(const Vec& a, const Vec& b) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& k : K) best = std::min(best, total.dist(total.mul(k, a), b));
  return best;
}

IsotropyFinding quotient_isotropy(const QuotientPresentation& Q, const Vec& h, double tol) {
  const int fd = Q.factor.elem_dim;
  const int n = Q.total.elem_dim - fd;
  IsotropyFinding out;
  out.base_point = h;
  Vec hi = Q.total.inv(h);
  for (const Vec& k : Q.K) {
    Vec cand = Q.total.mul(Q.total.mul(hi, k), h);
    double residue = cand.tail(n).norm();
    if (residue <= tol) {
      out.elements.push_back(cand.head(fd));
      out.residual = std::max(out.residual, residue);
    }
  }
  out.order = static_cast<int>(out.elements.size());
  if (Q.factor.act_on_V && Q.factor.n > 0)
    for (const Vec& g : out.elements) out.v_actions.push_back(action_matrix(Q.factor, g));
  // exact construction: verify closure anyway
  for (const Vec& g1 : out.elements)
    for (const Vec& g2 : out.elements) {
      Vec prod = Q.factor.mul(g1, g2);
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& g : out.elements) best = std::min(best, Q.factor.dist(prod, g));
      if (best > 1e-6) out.closed_under_product = false;
    }
  return out;
}

IsotropyFinding isotropy_scan(const PointAction& A, const Vec& chart_point,
                              const IsotropyScanOptions& opts) {
  const GroupModel& G = A.group;
  Vec rep = A.lift ? A.lift(chart_point) : chart_point;
  auto score = [&](const Vec& g) { return A.dist(A.act(rep, g), rep); };

  std::mt19937_64 rng(opts.seed);
  struct Cand {
    Vec g;
    double d;
    int idx;
  };
  std::vector<Cand> cands;
  cands.push_back({G.identity, score(G.identity), 0});
  for (int i = 0; i < opts.samples; ++i) {
    Vec g = G.sample(rng);
    cands.push_back({g, score(g), i + 1});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.idx < b.idx;
  });
  int keep = std::min<int>(opts.refine_top, static_cast<int>(cands.size()));

  // Deterministic pattern search in the group chart around each candidate.
  auto refine = [&](Vec g, double d) {
    double step = 0.25;
    for (int iter = 0; iter < opts.max_refine_iters && step > 1e-10; ++iter) {
      bool improved = false;
      for (int dir = 0; dir < G.alg_dim; ++dir) {
        for (double sgn : {1.0, -1.0}) {
          Vec delta = Vec::Zero(G.alg_dim);
          delta(dir) = sgn * step;
          Vec g2 = G.exp_nudge(g, delta);
          double d2 = score(g2);
          if (d2 < d - 1e-15) {
            g = g2;
            d = d2;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return std::make_pair(g, d);
  };

  IsotropyFinding out;
  out.base_point = chart_point;
  const double dedupe = std::max(1e-2, 10.0 * opts.tol);
  for (int i = 0; i < keep; ++i) {
    auto [g, d] = refine(cands[i].g, cands[i].d);
    if (d > opts.tol) continue;
    bool dup = false;
    for (const Vec& e : out.elements)
      if (G.dist(e, g) < dedupe) dup = true;
    if (dup) continue;
    out.elements.push_back(g);
    out.residual = std::max(out.residual, d);
  }
  out.order = static_cast<int>(out.elements.size());
  if (G.act_on_V && G.n > 0)
    for (const Vec& g : out.elements) out.v_actions.push_back(action_matrix(G, g));
  for (const Vec& g1 : out.elements)
    for (const Vec& g2 : out.elements) {
      Vec prod = G.mul(g1, g2);
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& g : out.elements) best = std::min(best, G.dist(prod, g));
      if (best > dedupe) out.closed_under_product = false;
    }
  return out;
}

OrbitTypeOrder orbit_type_compare(const GroupModel& G, const IsotropyFinding& a,
                                  const IsotropyFinding& b, double tol) {
  auto subset = [&](const IsotropyFinding& small, const IsotropyFinding& big) {
    for (const Vec& g : small.elements) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& h : big.elements) best = std::min(best, G.dist(g, h));
      if (best > tol) return false;
    }
    return true;
  };
  if (a.order == b.order)
    return subset(a, b) && subset(b, a) ? OrbitTypeOrder::Equal : OrbitTypeOrder::Incomparable;
  if (a.order < b.order)
    return subset(a, b) ? OrbitTypeOrder::FirstLarger : OrbitTypeOrder::Incomparable;
  return subset(b, a) ? OrbitTypeOrder::SecondLarger : OrbitTypeOrder::Incomparable;
}

}  // namespace gfb
