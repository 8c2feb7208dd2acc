#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gfb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Entrywise max-abs norm. All residuals in this library are reported in
/// this norm; the Frobenius alternative differs by a bounded factor only.
inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline double max_abs(const std::vector<Mat>& ms) {
  double worst = 0.0;
  for (const Mat& m : ms) worst = std::max(worst, max_abs(m));
  return worst;
}

/// 2-norm condition number via SVD. Returns +inf for singular input.
inline double cond_2(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace gfb
