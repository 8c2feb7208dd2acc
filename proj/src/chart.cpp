#include "gfb/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace gfb {

Vec ChartDomain::wrap(Vec p) const {
  for (int i = 0; i < dim(); ++i) {
    if (!periodic[i]) continue;
    double span = period(i);
    double t = std::fmod(p(i) - lower(i), span);
    if (t < 0.0) t += span;
    p(i) = lower(i) + t;
  }
  return p;
}

bool ChartDomain::contains(const Vec& p) const {
  for (int i = 0; i < dim(); ++i) {
    if (periodic[i]) continue;
    if (p(i) < lower(i) || p(i) > upper(i)) return false;
  }
  return true;
}

double ChartDomain::distance(const Vec& p, const Vec& q) const {
  return delta(p, q).norm();
}

Vec ChartDomain::delta(const Vec& p, const Vec& q) const {
  Vec d = p - q;
  for (int i = 0; i < dim(); ++i)
    if (periodic[i]) d(i) = std::remainder(d(i), period(i));
  return d;
}

Vec ChartDomain::sample(std::mt19937_64& rng, double margin) const {
  Vec p(dim());
  for (int i = 0; i < dim(); ++i) {
    double lo = lower(i), hi = upper(i);
    if (!periodic[i]) {
      lo += margin;
      hi -= margin;
      if (lo >= hi) throw std::domain_error("chart too thin for the requested margin");
    }
    std::uniform_real_distribution<double> dist(lo, hi);
    p(i) = dist(rng);
  }
  return p;
}

FrameAtPoint frame_at(const CoframeField& F, const Vec& p, double cond_cap) {
  if (p.size() != F.dim()) throw std::domain_error("frame_at: point has wrong dimension");
  Vec q = F.domain.wrap(p);
  if (!F.domain.contains(q))
    throw std::domain_error("frame_at: point outside chart domain of " + F.name);
  FrameAtPoint out;
  out.point = q;
  out.W = F.eval(q);
  out.cond = cond_2(out.W);
  if (!(out.cond <= cond_cap))
    throw std::domain_error("frame_at: coframe condition number exceeds cap on " + F.name);
  out.E = out.W.inverse();
  return out;
}

std::vector<Mat> exterior_derivative_at(const CoframeField& F, const Vec& p, double h) {
  int d = F.dim();
  Vec q = F.domain.wrap(p);
  if (!F.domain.contains(q))
    throw std::domain_error("exterior_derivative_at: point outside chart domain");
  // dW[mu] = dW/d(coord mu), each d x d.
  std::vector<Mat> dW(d);
  for (int mu = 0; mu < d; ++mu) {
    Vec qp = q, qm = q;
    qp(mu) += h;
    qm(mu) -= h;
    if (!F.domain.periodic[mu] && (!F.domain.contains(qp) || !F.domain.contains(qm)))
      throw std::domain_error("exterior_derivative_at: stencil exits chart through face " +
                              std::to_string(mu));
    dW[mu] = (F.eval(F.domain.wrap(qp)) - F.eval(F.domain.wrap(qm))) / (2.0 * h);
  }
  std::vector<Mat> out(d, Mat::Zero(d, d));
  for (int A = 0; A < d; ++A)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) out[A](mu, nu) = dW[mu](A, nu) - dW[nu](A, mu);
  return out;
}

Vec fundamental_vector(const CoframeField& F, const Vec& xi, const Vec& p) {
  if (xi.size() != F.g_dim())
    throw std::invalid_argument("fundamental_vector: xi must lie in the g part");
  Vec full = Vec::Zero(F.dim());
  full.head(F.g_dim()) = xi;
  return frame_vector(F, full, p);
}

Vec frame_vector(const CoframeField& F, const Vec& A, const Vec& p) {
  if (A.size() != F.dim())
    throw std::invalid_argument("frame_vector: element has wrong dimension");
  return frame_at(F, p).E * A;
}

}  // namespace gfb
