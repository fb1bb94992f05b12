#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "qube/errors.hpp"
#include "qube/layout.hpp"

namespace qube {

using complex_t = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Kronecker product with the dense-storage cap enforced on the result.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > kDimensionCap || cols > kDimensionCap)
    throw capacity_error("kron: result dimension exceeds cap of " +
                         std::to_string(kDimensionCap));
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  const std::size_t n = static_cast<std::size_t>(a.size()) * b.size();
  if (n > kDimensionCap)
    throw capacity_error("kron: result dimension exceeds cap of " +
                         std::to_string(kDimensionCap));
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw argument_error("frobenius_distance: dimension mismatch");
  return (a - b).norm();
}

inline double hermiticity_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Exact symmetrization; removes the tiny anti-Hermitian part that round-off
// can introduce in products that are Hermitian in exact arithmetic.
inline ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

// All eigenvalues of a Hermitian matrix, descending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                                 double hermiticity_tol = 1e-8) {
  if (m.rows() != m.cols())
    throw argument_error("hermitian_eigenvalues: matrix must be square");
  if (hermiticity_deviation(m) > hermiticity_tol)
    throw argument_error("hermitian_eigenvalues: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m),
                                                      Eigen::EigenvaluesOnly);
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + m.rows());
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

inline double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  auto values = hermitian_eigenvalues(m);
  return values.back();
}

}  // namespace qube
