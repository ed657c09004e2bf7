#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace covmap {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Row-major Kronecker product: (a⊗b)[(i*p+k),(j*q+l)] = a[i,j] b[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double hermiticity_defect(const CMatrix& a);

// Ascending eigenvalues of the hermitian part.
RVector hermitian_eigenvalues(const CMatrix& h);

struct HermitianEigen {
  RVector values;
  CMatrix vectors;  // columns
};
HermitianEigen hermitian_eigen(const CMatrix& h);

double spectral_norm_hermitian(const CMatrix& h);

// Row-major vectorisation, vec(X)[k*d+l] = X[k,l].
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, int d);

// Elementary matrix E_ij of size d.
CMatrix unit_matrix(int d, int i, int j);

cplx root_of_unity(int n, long long k);

}  // namespace covmap
