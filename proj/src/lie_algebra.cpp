#include "gfb/lie_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "gfb/quaternion.hpp"

namespace gfb {

namespace {

double jacobi_residual_raw(int dim, const std::vector<double>& c) {
  auto C = [&](int A, int B, int Cc) {
    return c[(static_cast<size_t>(A) * dim + B) * dim + Cc];
  };
  double worst = 0.0;
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B)
      for (int Cc = 0; Cc < dim; ++Cc)
        for (int E = 0; E < dim; ++E) {
          double s = 0.0;
          for (int D = 0; D < dim; ++D) {
            s += C(D, A, B) * C(E, D, Cc);
            s += C(D, B, Cc) * C(E, D, A);
            s += C(D, Cc, A) * C(E, D, B);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, std::vector<double> c, std::vector<std::string> labels)
    : dim_(dim), c_(std::move(c)), labels_(std::move(labels)) {
  if (dim_ < 0 || c_.size() != static_cast<size_t>(dim_) * dim_ * dim_)
    throw std::invalid_argument("structure constant array has wrong size");
  if (labels_.size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("basis label count does not match dimension");
  for (int A = 0; A < dim_; ++A)
    for (int B = 0; B < dim_; ++B)
      for (int C = 0; C < dim_; ++C)
        if (this->c(A, B, C) != -this->c(A, C, B))
          throw std::invalid_argument("structure constants are not antisymmetric");
  if (jacobi_residual_raw(dim_, c_) > 1e-8)
    throw std::invalid_argument("structure constants violate the Jacobi identity");
}

Mat LieAlgebra::ad(const AlgebraElement& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ad: element has wrong dimension");
  Mat m = Mat::Zero(dim_, dim_);
  for (int A = 0; A < dim_; ++A)
    for (int B = 0; B < dim_; ++B) {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += x(i) * c(A, i, B);
      m(A, B) = s;
    }
  return m;
}

AlgebraElement bracket(const LieAlgebra& L, const AlgebraElement& x, const AlgebraElement& y) {
  if (x.size() != L.dim() || y.size() != L.dim())
    throw std::invalid_argument("bracket: element has wrong dimension");
  AlgebraElement out = Vec::Zero(L.dim());
  for (int A = 0; A < L.dim(); ++A) {
    double s = 0.0;
    for (int B = 0; B < L.dim(); ++B)
      for (int C = 0; C < L.dim(); ++C) s += L.c(A, B, C) * x(B) * y(C);
    out(A) = s;
  }
  return out;
}

double jacobi_residual(const LieAlgebra& L) {
  std::vector<double> c(static_cast<size_t>(L.dim()) * L.dim() * L.dim());
  for (int A = 0; A < L.dim(); ++A)
    for (int B = 0; B < L.dim(); ++B)
      for (int C = 0; C < L.dim(); ++C)
        c[(static_cast<size_t>(A) * L.dim() + B) * L.dim() + C] = L.c(A, B, C);
  return jacobi_residual_raw(L.dim(), c);
}

double representation_residual(const SemidirectData& sd) {
  int gd = sd.g.dim();
  if (static_cast<int>(sd.rho.size()) != gd)
    throw std::invalid_argument("rho must provide one matrix per g basis vector");
  for (const Mat& r : sd.rho)
    if (r.rows() != sd.n || r.cols() != sd.n)
      throw std::invalid_argument("rho matrices must be n x n");
  double worst = 0.0;
  for (int i = 0; i < gd; ++i)
    for (int j = 0; j < gd; ++j) {
      Vec ei = Vec::Zero(gd), ej = Vec::Zero(gd);
      ei(i) = 1.0;
      ej(j) = 1.0;
      Vec br = bracket(sd.g, ei, ej);
      Mat rho_br = Mat::Zero(sd.n, sd.n);
      for (int k = 0; k < gd; ++k) rho_br += br(k) * sd.rho[k];
      Mat comm = sd.rho[i] * sd.rho[j] - sd.rho[j] * sd.rho[i];
      worst = std::max(worst, max_abs(Mat(rho_br - comm)));
    }
  return worst;
}

LieAlgebra semidirect(const SemidirectData& sd, const std::string& label_prefix) {
  if (representation_residual(sd) > 1e-8)
    throw std::invalid_argument("rho is not a representation of g");
  int gd = sd.g.dim();
  int d = gd + sd.n;
  std::vector<double> c(static_cast<size_t>(d) * d * d, 0.0);
  auto set = [&](int A, int B, int C, double v) {
    c[(static_cast<size_t>(A) * d + B) * d + C] = v;
  };
  for (int A = 0; A < gd; ++A)
    for (int B = 0; B < gd; ++B)
      for (int C = 0; C < gd; ++C) set(A, B, C, sd.g.c(A, B, C));
  for (int i = 0; i < gd; ++i)
    for (int a = 0; a < sd.n; ++a)
      for (int b = 0; b < sd.n; ++b) {
        set(gd + a, i, gd + b, sd.rho[i](a, b));
        set(gd + a, gd + b, i, -sd.rho[i](a, b));
      }
  std::vector<std::string> labels = sd.g.labels();
  for (int a = 0; a < sd.n; ++a) labels.push_back(label_prefix + std::to_string(a + 1));
  return LieAlgebra(d, std::move(c), std::move(labels));
}

std::vector<Mat> wedge_bracket_at(const LieAlgebra& L, const Mat& W) {
  if (W.rows() != L.dim())
    throw std::invalid_argument("wedge_bracket_at: W row count must equal algebra dimension");
  int d = L.dim();
  int m = static_cast<int>(W.cols());
  std::vector<Mat> out(d, Mat::Zero(m, m));
  for (int A = 0; A < d; ++A)
    for (int B = 0; B < d; ++B)
      for (int C = 0; C < d; ++C) {
        double coeff = L.c(A, B, C);
        if (coeff == 0.0) continue;
        out[A].noalias() += 2.0 * coeff * (W.row(B).transpose() * W.row(C));
      }
  return out;
}

namespace {

std::vector<double> zero_c(int d) {
  return std::vector<double>(static_cast<size_t>(d) * d * d, 0.0);
}

LieAlgebra make_so3() {
  auto c = zero_c(3);
  auto set = [&](int A, int B, int C, double v) {
    c[(static_cast<size_t>(A) * 3 + B) * 3 + C] = v;
  };
  // [L_A, L_B] = eps_{ABC} L_C
  set(2, 0, 1, 1.0);
  set(2, 1, 0, -1.0);
  set(0, 1, 2, 1.0);
  set(0, 2, 1, -1.0);
  set(1, 2, 0, 1.0);
  set(1, 0, 2, -1.0);
  return LieAlgebra(3, std::move(c), {"L1", "L2", "L3"});
}

LieAlgebra make_spin3(const std::string& p) {
  // sp(1) in the basis (i, j, k): [i_a, i_b] = 2 eps_{abc} i_c.
  auto c = zero_c(3);
  auto set = [&](int A, int B, int C, double v) {
    c[(static_cast<size_t>(A) * 3 + B) * 3 + C] = v;
  };
  set(2, 0, 1, 2.0);
  set(2, 1, 0, -2.0);
  set(0, 1, 2, 2.0);
  set(0, 2, 1, -2.0);
  set(1, 2, 0, 2.0);
  set(1, 0, 2, -2.0);
  return LieAlgebra(3, std::move(c), {p + "1", p + "2", p + "3"});
}

LieAlgebra make_spin4() {
  // sp(1) + sp(1), basis (l1,l2,l3,r1,r2,r3); the two factors commute.
  auto c = zero_c(6);
  auto set = [&](int A, int B, int C, double v) {
    c[(static_cast<size_t>(A) * 6 + B) * 6 + C] = v;
  };
  auto block = [&](int off) {
    set(off + 2, off + 0, off + 1, 2.0);
    set(off + 2, off + 1, off + 0, -2.0);
    set(off + 0, off + 1, off + 2, 2.0);
    set(off + 0, off + 2, off + 1, -2.0);
    set(off + 1, off + 2, off + 0, 2.0);
    set(off + 1, off + 0, off + 2, -2.0);
  };
  block(0);
  block(3);
  return LieAlgebra(6, std::move(c), {"l1", "l2", "l3", "r1", "r2", "r3"});
}

LieAlgebra make_so3_relabeled() {
  // so(3) in the basis (xi, e1, e2) = (-L3, L1, L2):
  // [xi,e1] = -e2, [xi,e2] = e1, [e1,e2] = -xi.
  auto c = zero_c(3);
  auto set = [&](int A, int B, int C, double v) {
    c[(static_cast<size_t>(A) * 3 + B) * 3 + C] = v;
    c[(static_cast<size_t>(A) * 3 + C) * 3 + B] = -v;
  };
  set(2, 0, 1, -1.0);
  set(1, 0, 2, 1.0);
  set(0, 1, 2, -1.0);
  return LieAlgebra(3, std::move(c), {"xi", "e1", "e2"});
}

}  // namespace

SemidirectData semidirect_catalog(const std::string& id) {
  if (id == "so2_semi_r2") {
    Mat J(2, 2);
    J << 0.0, -1.0, 1.0, 0.0;
    return {algebra_catalog("so2"), 2, {J}};
  }
  if (id == "spin4_semi_r4") {
    std::vector<Mat> rho;
    const Eigen::Vector3d axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int a = 0; a < 3; ++a) {
      Quat ia{0.0, axes[a](0), axes[a](1), axes[a](2)};
      rho.push_back(left_mul_matrix(ia));
    }
    for (int a = 0; a < 3; ++a) {
      Quat ia{0.0, axes[a](0), axes[a](1), axes[a](2)};
      rho.push_back(Mat(-right_mul_matrix(ia)));
    }
    return {algebra_catalog("spin4"), 4, std::move(rho)};
  }
  throw std::invalid_argument("unknown semidirect datum: " + id);
}

LieAlgebra algebra_catalog(const std::string& id) {
  if (id == "so2") return LieAlgebra(1, zero_c(1), {"xi"});
  if (id == "so3") return make_so3();
  if (id == "spin3") return make_spin3("i");
  if (id == "spin4") return make_spin4();
  if (id == "so2_semi_r2") return semidirect(semidirect_catalog("so2_semi_r2"));
  if (id == "spin4_semi_r4") return semidirect(semidirect_catalog("spin4_semi_r4"));
  if (id == "so3_as_so2_semi_r2") return make_so3_relabeled();
  throw std::invalid_argument("unknown algebra id: " + id);
}

}  // namespace gfb
