#include "gfb/flows.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfb {

namespace {

// One classical RK4 step of x' = f(x). Throws if any stage leaves the chart.
template <typename F>
Vec rk4_step(const F& f, const Vec& x, double dt) {
  Vec k1 = f(x);
  Vec k2 = f(x + 0.5 * dt * k1);
  Vec k3 = f(x + 0.5 * dt * k2);
  Vec k4 = f(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename F>
Vec rk4_step_t(const F& f, double t, const Vec& x, double dt) {
  Vec k1 = f(t, x);
  Vec k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
  Vec k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
  Vec k4 = f(t + dt, x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

OrbitTrace flow(const CoframeField& F, const Vec& xi, const Vec& p0, double T, int steps) {
  steps = std::max(steps, 16);
  const double dt = T / steps;
  auto f = [&](const Vec& x) { return fundamental_vector(F, xi, x); };

  OrbitTrace tr;
  tr.t.reserve(steps + 1);
  tr.x.reserve(steps + 1);
  Vec x = F.domain.wrap(p0);
  if (!F.domain.contains(x)) throw std::domain_error("flow: start point outside chart");
  tr.t.push_back(0.0);
  tr.x.push_back(x);
  for (int k = 0; k < steps; ++k) {
    Vec next;
    try {
      next = F.domain.wrap(rk4_step(f, x, dt));
    } catch (const std::domain_error&) {
      tr.left_domain = true;
      tr.exit_time = tr.t.back();
      return tr;
    }
    if (!F.domain.contains(next)) {
      tr.left_domain = true;
      tr.exit_time = tr.t.back();
      return tr;
    }
    x = next;
    tr.t.push_back(dt * (k + 1));
    tr.x.push_back(x);
  }
  return tr;
}

Vec flow_endpoint(const CoframeField& F, const Vec& xi, const Vec& p0, double T, int steps) {
  steps = std::max(steps, 16);
  const double dt = T / steps;
  auto f = [&](const Vec& x) { return fundamental_vector(F, xi, x); };
  Vec x = F.domain.wrap(p0);
  for (int k = 0; k < steps; ++k) {
    x = F.domain.wrap(rk4_step(f, x, dt));
    if (!F.domain.contains(x)) throw std::domain_error("flow_endpoint: left chart domain");
  }
  return x;
}

ClosureResult detect_closure(const CoframeField& F, const Vec& xi, const Vec& p0, double T_max,
                             double tol, int steps) {
  ClosureResult out;
  OrbitTrace tr = flow(F, xi, p0, T_max, steps);
  out.left_domain = tr.left_domain;
  const Vec origin = tr.x.front();

  // Largest per-step displacement bounds how deep the sampled distance can
  // dip between nodes; the candidate gate must clear it.
  double max_move = 0.0;
  for (size_t k = 1; k < tr.x.size(); ++k)
    max_move = std::max(max_move, F.domain.distance(tr.x[k], tr.x[k - 1]));
  const double gate = std::max(10.0 * tol, 1.5 * max_move);

  std::vector<double> dist(tr.x.size());
  for (size_t k = 0; k < tr.x.size(); ++k) dist[k] = F.domain.distance(tr.x[k], origin);

  // Refine a candidate dip around node k by interval halving on the
  // re-integrated local flow (golden-section on the unimodal distance dip).
  auto refine = [&](size_t k) {
    const Vec& base = tr.x[k - 1];
    const double t_base = tr.t[k - 1];
    double lo = 0.0, hi = tr.t[std::min(k + 1, tr.x.size() - 1)] - t_base;
    auto g = [&](double s) {
      return F.domain.distance(flow_endpoint(F, xi, base, s, 64), origin);
    };
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > 1e-8) {
      if (gc < gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - inv_phi * (b - a);
        gc = g(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + inv_phi * (b - a);
        gd = g(d);
      }
    }
    double s = 0.5 * (a + b);
    return std::make_pair(t_base + s, g(s));
  };

  bool escaped = false;
  for (size_t k = 1; k + 1 < tr.x.size(); ++k) {
    if (dist[k] > 2.0 * gate) escaped = true;
    if (!escaped) continue;
    if (dist[k] < gate && dist[k] <= dist[k - 1] && dist[k] <= dist[k + 1]) {
      auto [t_star, d_star] = refine(k);
      if (d_star < tol) {
        out.found = true;
        out.period = t_star;
        out.distance = d_star;
        return out;
      }
    }
  }
  return out;
}

AlgebraPath AlgebraPath::constant(const Vec& a, double T) {
  AlgebraPath p;
  p.T = T;
  p.breaks = {0.0, T};
  p.value = [a](double) { return a; };
  return p;
}

AlgebraPath AlgebraPath::schedule(const std::vector<std::pair<double, Vec>>& segments) {
  if (segments.empty()) throw std::invalid_argument("empty schedule");
  AlgebraPath p;
  p.breaks = {0.0};
  std::vector<std::pair<double, Vec>> segs = segments;
  for (const auto& [dur, val] : segs) {
    if (dur <= 0.0) throw std::invalid_argument("schedule durations must be positive");
    p.breaks.push_back(p.breaks.back() + dur);
  }
  p.T = p.breaks.back();
  std::vector<double> breaks = p.breaks;
  p.value = [segs, breaks](double t) {
    for (size_t i = 1; i < breaks.size(); ++i)
      if (t < breaks[i] || i + 1 == breaks.size()) return segs[i - 1].second;
    return segs.back().second;
  };
  return p;
}

PathActionResult integrate_path_action(const CoframeField& F, const AlgebraPath& a, const Vec& p0,
                                       int steps) {
  bool ascending = a.breaks.size() >= 2 && a.breaks.front() == 0.0 &&
                   std::abs(a.breaks.back() - a.T) <= 1e-12;
  for (size_t i = 1; ascending && i < a.breaks.size(); ++i)
    if (!(a.breaks[i] > a.breaks[i - 1])) ascending = false;
  if (!ascending) throw std::invalid_argument("path breaks must ascend from 0 to T");

  PathActionResult out;
  out.trace.t.push_back(0.0);
  Vec x = F.domain.wrap(p0);
  if (!F.domain.contains(x)) throw std::domain_error("integrate_path_action: start outside chart");
  out.trace.x.push_back(x);

  auto f = [&](double t, const Vec& q) {
    Vec xi = a.value(t);
    return fundamental_vector(F, xi, q);
  };

  for (size_t piece = 1; piece < a.breaks.size(); ++piece) {
    const double t0 = a.breaks[piece - 1], t1 = a.breaks[piece];
    const double len = t1 - t0;
    int sub = std::max(16, static_cast<int>(std::ceil(steps * len / a.T)));
    const double dt = len / sub;
    for (int k = 0; k < sub; ++k) {
      double t = t0 + k * dt;
      // keep every stage strictly inside the piece so schedule discontinuities
      // are never straddled
      auto f_piece = [&](double s, const Vec& q) {
        double sc = std::min(s, t1 - 1e-12 * std::max(1.0, std::abs(t1)));
        return f(sc, q);
      };
      Vec next;
      try {
        next = F.domain.wrap(rk4_step_t(f_piece, t, x, dt));
      } catch (const std::domain_error&) {
        out.completed = false;
        out.exit_time = t;
        out.endpoint = x;
        out.trace.left_domain = true;
        out.trace.exit_time = t;
        return out;
      }
      if (!F.domain.contains(next)) {
        out.completed = false;
        out.exit_time = t;
        out.endpoint = x;
        out.trace.left_domain = true;
        out.trace.exit_time = t;
        return out;
      }
      x = next;
      out.trace.t.push_back(t + dt);
      out.trace.x.push_back(x);
    }
  }
  out.endpoint = x;
  return out;
}

HolonomyResult holonomy_defect(const CoframeField& F, const Vec& p0, const AlgebraPath& loop,
                               int steps) {
  PathActionResult r = integrate_path_action(F, loop, p0, steps);
  HolonomyResult out;
  out.completed = r.completed;
  out.endpoint = r.endpoint;
  out.defect = r.completed ? F.domain.distance(r.endpoint, F.domain.wrap(p0))
                           : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace gfb
