#include "gfb/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace gfb {

namespace {

/// rho(omega_mu) at p: the g rows of W contracted with the value-space action.
std::vector<Mat> connection_matrices(const CoframeField& F, const Mat& W,
                                     const std::vector<Mat>& rho_V) {
  const int gd = F.g_dim();
  if (static_cast<int>(rho_V.size()) != gd)
    throw std::invalid_argument("rho_V must provide one matrix per g basis vector");
  const int m = static_cast<int>(rho_V.empty() ? 0 : rho_V[0].rows());
  std::vector<Mat> out(F.dim(), Mat::Zero(m, m));
  for (int mu = 0; mu < F.dim(); ++mu)
    for (int i = 0; i < gd; ++i) out[mu] += W(i, mu) * rho_V[i];
  return out;
}

void check_inside_for_stencil(const CoframeField& F, const Vec& p, double h) {
  for (int mu = 0; mu < F.dim(); ++mu) {
    if (F.domain.periodic[mu]) continue;
    Vec qp = p, qm = p;
    qp(mu) += h;
    qm(mu) -= h;
    if (!F.domain.contains(qp) || !F.domain.contains(qm))
      throw std::domain_error("covariant derivative stencil exits chart domain");
  }
}

}  // namespace

std::vector<Mat> curvature_at(const CoframeField& F, const Vec& p, double h) {
  return structure_residual_at(F, p, h).omega;
}

std::vector<Mat> torsion_at(const CoframeField& F, const Vec& p, double h) {
  return structure_residual_at(F, p, h).theta;
}

Mat covariant_exterior_derivative(const CoframeField& F,
                                  const std::function<Vec(const Vec&)>& psi,
                                  const std::vector<Mat>& rho_V, const Vec& p, double h) {
  const int d = F.dim();
  Vec q = F.domain.wrap(p);
  check_inside_for_stencil(F, q, h);
  Vec psi0 = psi(q);
  const int m = static_cast<int>(psi0.size());
  std::vector<Mat> conn = connection_matrices(F, F.eval(q), rho_V);

  Mat out(m, d);
  for (int mu = 0; mu < d; ++mu) {
    Vec qp = q, qm = q;
    qp(mu) += h;
    qm(mu) -= h;
    Vec dmu = (psi(F.domain.wrap(qp)) - psi(F.domain.wrap(qm))) / (2.0 * h);
    out.col(mu) = dmu + conn[mu] * psi0;
  }
  return out;
}

std::vector<Mat> covariant_exterior_derivative(const CoframeField& F,
                                               const std::function<Mat(const Vec&)>& psi,
                                               const std::vector<Mat>& rho_V, const Vec& p,
                                               double h) {
  const int d = F.dim();
  Vec q = F.domain.wrap(p);
  check_inside_for_stencil(F, q, h);
  Mat psi0 = psi(q);
  const int m = static_cast<int>(psi0.rows());
  std::vector<Mat> conn = connection_matrices(F, F.eval(q), rho_V);

  // dpsi[mu] = d(psi)/d(coord mu), each m x d
  std::vector<Mat> dpsi(d);
  for (int mu = 0; mu < d; ++mu) {
    Vec qp = q, qm = q;
    qp(mu) += h;
    qm(mu) -= h;
    dpsi[mu] = (psi(F.domain.wrap(qp)) - psi(F.domain.wrap(qm))) / (2.0 * h);
  }

  std::vector<Mat> out(m, Mat::Zero(d, d));
  for (int v = 0; v < m; ++v)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        double exterior = dpsi[mu](v, nu) - dpsi[nu](v, mu);
        double coupling = conn[mu].row(v).dot(psi0.col(nu)) - conn[nu].row(v).dot(psi0.col(mu));
        out[v](mu, nu) = exterior + coupling;
      }
  return out;
}

std::vector<std::vector<Mat>> covariant_exterior_derivative(
    const CoframeField& F, const std::function<std::vector<Mat>(const Vec&)>& psi,
    const std::vector<Mat>& rho_V, const Vec& p, double h) {
  const int d = F.dim();
  Vec q = F.domain.wrap(p);
  check_inside_for_stencil(F, q, h);
  std::vector<Mat> psi0 = psi(q);
  const int m = static_cast<int>(psi0.size());
  std::vector<Mat> conn = connection_matrices(F, F.eval(q), rho_V);

  // dpsi[mu][v](nu, lam)
  std::vector<std::vector<Mat>> dpsi(d);
  for (int mu = 0; mu < d; ++mu) {
    Vec qp = q, qm = q;
    qp(mu) += h;
    qm(mu) -= h;
    std::vector<Mat> plus = psi(F.domain.wrap(qp)), minus = psi(F.domain.wrap(qm));
    dpsi[mu].resize(m);
    for (int v = 0; v < m; ++v) dpsi[mu][v] = (plus[v] - minus[v]) / (2.0 * h);
  }

  std::vector<std::vector<Mat>> out(m, std::vector<Mat>(d, Mat::Zero(d, d)));
  for (int v = 0; v < m; ++v)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu)
        for (int lam = 0; lam < d; ++lam) {
          double exterior = dpsi[mu][v](nu, lam) + dpsi[nu][v](lam, mu) + dpsi[lam][v](mu, nu);
          double coupling = 0.0;
          for (int w = 0; w < m; ++w)
            coupling += conn[mu](v, w) * psi0[w](nu, lam) + conn[nu](v, w) * psi0[w](lam, mu) +
                        conn[lam](v, w) * psi0[w](mu, nu);
          out[v][mu](nu, lam) = exterior + coupling;
        }
  return out;
}

double bianchi_residual(const CoframeField& F, const Vec& p, double h) {
  const int gd = F.g_dim();
  // ad representation of g on itself
  std::vector<Mat> ad(gd, Mat::Zero(gd, gd));
  for (int i = 0; i < gd; ++i)
    for (int j = 0; j < gd; ++j)
      for (int k = 0; k < gd; ++k) ad[i](j, k) = F.semi.g.c(j, i, k);

  auto omega_form = [&](const Vec& q) {
    StructureResidual sr = structure_residual_at(F, q, h);
    std::vector<Mat> g_rows(gd);
    for (int i = 0; i < gd; ++i) g_rows[i] = sr.R_coord[i];
    return g_rows;
  };
  auto d3 = covariant_exterior_derivative(F, omega_form, ad, p, h);

  double worst = 0.0;
  for (const auto& per_value : d3)
    for (const Mat& mmat : per_value) worst = std::max(worst, max_abs(mmat));
  return worst;
}

double ricci_identity_residual(const CoframeField& F, const std::function<Vec(const Vec&)>& psi,
                               const std::vector<Mat>& rho_V, const Vec& p, double h) {
  std::function<Mat(const Vec&)> dpsi = [&](const Vec& q) {
    return covariant_exterior_derivative(F, psi, rho_V, q, h);
  };
  std::vector<Mat> dd = covariant_exterior_derivative(F, dpsi, rho_V, p, h);

  StructureResidual sr = structure_residual_at(F, p, h);
  Vec psi0 = psi(F.domain.wrap(p));
  const int m = static_cast<int>(psi0.size());
  const int d = F.dim();

  double worst = 0.0;
  for (int v = 0; v < m; ++v)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        double curv = 0.0;
        for (int i = 0; i < F.g_dim(); ++i)
          curv += sr.R_coord[i](mu, nu) * rho_V[i].row(v).dot(psi0);
        worst = std::max(worst, std::abs(dd[v](mu, nu) - curv));
      }
  return worst;
}

CurvaturePanel einstein_panel(const CoframeField& F, const Vec& p, const Mat& eta, double h) {
  const int gd = F.g_dim();
  const int n = F.dim() - gd;
  if (eta.rows() != n || eta.cols() != n)
    throw std::invalid_argument("einstein_panel: eta must be n x n");
  for (int i = 0; i < gd; ++i) {
    Mat viol = F.semi.rho[i].transpose() * eta + eta * F.semi.rho[i];
    if (max_abs(viol) > 1e-10)
      throw std::invalid_argument("einstein_panel: eta is not invariant under rho[" +
                                  std::to_string(i) + "]");
  }

  StructureResidual sr = structure_residual_at(F, p, h);
  CurvaturePanel panel;
  panel.point = sr.point;
  panel.eta = eta;
  panel.omega = sr.omega;
  panel.theta = sr.theta;
  panel.vertical_violation = sr.vertical_violation;

  panel.riem.assign(static_cast<size_t>(n) * n, Mat::Zero(n, n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      Mat m = Mat::Zero(n, n);
      for (int i = 0; i < gd; ++i) m += sr.omega[i](b, c) * F.semi.rho[i];
      panel.riem[static_cast<size_t>(b) * n + c] = m;
    }

  panel.ric = Mat::Zero(n, n);
  for (int dI = 0; dI < n; ++dI)
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int i = 0; i < gd; ++i)
        for (int b = 0; b < n; ++b) s += sr.omega[i](b, c) * F.semi.rho[i](b, dI);
      panel.ric(dI, c) = s;
    }

  Mat eta_inv = eta.inverse();
  panel.scal = (eta_inv.cwiseProduct(panel.ric)).sum();
  panel.ein = panel.ric - 0.5 * panel.scal * eta;
  return panel;
}

}  // namespace gfb
