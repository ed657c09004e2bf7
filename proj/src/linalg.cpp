#include "covmap/linalg.hpp"

#include <cmath>
#include <numbers>

namespace covmap {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

double hermiticity_defect(const CMatrix& a) { return max_abs(a - a.adjoint()); }

RVector hermitian_eigenvalues(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianEigen hermitian_eigen(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

double spectral_norm_hermitian(const CMatrix& h) {
  const RVector ev = hermitian_eigenvalues(h);
  if (ev.size() == 0) return 0.0;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

CVector vec(const CMatrix& x) {
  CVector v(x.size());
  for (Eigen::Index k = 0; k < x.rows(); ++k)
    for (Eigen::Index l = 0; l < x.cols(); ++l) v(k * x.cols() + l) = x(k, l);
  return v;
}

CMatrix unvec(const CVector& v, int d) {
  CMatrix x(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) x(k, l) = v(k * d + l);
  return x;
}

CMatrix unit_matrix(int d, int i, int j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

cplx root_of_unity(int n, long long k) {
  // reduce first so large exponents keep full precision
  long long r = k % n;
  if (r < 0) r += n;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == n) return {-1.0, 0.0};
  if (4 * r == n) return {0.0, 1.0};
  if (4 * r == 3 * n) return {0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / n;
  return {std::cos(t), std::sin(t)};
}

}  // namespace covmap
