#include "stieltjescf/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stieltjescf {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermitian_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_finite(const Matrix& m) { return m.allFinite(); }

bool is_hermitian(const Matrix& m, double tolerance) {
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tolerance * scale;
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_psd(const Matrix& m, double tolerance) {
  if (m.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -tolerance * scale;
}

Eigen::Index psd_rank(const Matrix& m, double cutoff) {
  if (m.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff * top) ++r;
  return r;
}

Matrix psd_clip(const Matrix& m, double cutoff, double* worst) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.cwiseAbs().maxCoeff(), 0.0) : 0.0;
  if (worst) *worst = ev.size() ? ev.minCoeff() : 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < cutoff * top) ev[i] = 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix psd_factor(const Matrix& w, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(w));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.cwiseAbs().maxCoeff(), 0.0) : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff * top) keep.push_back(i);
  Matrix k(static_cast<Eigen::Index>(keep.size()), w.rows());
  for (Eigen::Index r = 0; r < k.rows(); ++r)
    k.row(r) = std::sqrt(ev[keep[static_cast<std::size_t>(r)]]) *
               es.eigenvectors().col(keep[static_cast<std::size_t>(r)]).adjoint();
  return k;
}

Matrix pseudo_inverse(const Matrix& m, double cutoff, double* smallest_kept) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv.maxCoeff() : 0.0;
  if (smallest_kept) *smallest_kept = std::numeric_limits<double>::infinity();
  if (top == 0.0) return Matrix::Zero(m.cols(), m.rows());
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff * top) {
      inv[i] = 1.0 / sv[i];
      if (smallest_kept) *smallest_kept = std::min(*smallest_kept, sv[i]);
    }
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Matrix range_basis(const Matrix& m, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.cwiseAbs().maxCoeff(), 0.0) : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (top > 0.0 && ev[i] > cutoff * top) keep.push_back(i);
  Matrix q(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (Eigen::Index c = 0; c < q.cols(); ++c)
    q.col(c) = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
  return q;
}

}  // namespace stieltjescf
