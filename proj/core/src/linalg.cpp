#include "funcmodel/linalg.hpp"

#include <cmath>
#include <limits>

namespace funcmodel {

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double condition_number(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

CMatrix guarded_solve(const CMatrix& m, const CMatrix& rhs, double max_cond,
                      const std::string& what) {
  const double c = condition_number(m);
  if (!(c <= max_cond)) {
    throw SpectralPointError(what + " (condition number " + std::to_string(c) +
                             ")");
  }
  return m.partialPivLu().solve(rhs);
}

CMatrix guarded_inverse(const CMatrix& m, double max_cond,
                        const std::string& what) {
  return guarded_solve(m, CMatrix::Identity(m.rows(), m.cols()), max_cond,
                       what);
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

CMatrix hermitian_pinv(const CMatrix& m, double cutoff) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector inv = es.eigenvalues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = inv(i) > cutoff ? 1.0 / inv(i) : 0.0;
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CMatrix spectral_projection(const CMatrix& involution, int sign) {
  const CMatrix h = 0.5 * (involution + involution.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector mask(h.rows());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    const double ev = es.eigenvalues()(i);
    mask(i) = (sign > 0 ? ev > 0.0 : ev < 0.0) ? 1.0 : 0.0;
  }
  return es.eigenvectors() * mask.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace funcmodel
