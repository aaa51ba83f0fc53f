#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sckey {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Squared magnitude of the inner product <a|b>, the Born-rule weight.
template <typename DerivedA, typename DerivedB>
double overlap_sq(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  return std::norm(Complex(a.dot(b)));
}

// Kronecker product a (x) b in lexicographic basis order.
template <typename DerivedA, typename DerivedB>
CVector kron(const Eigen::MatrixBase<DerivedA>& a,
             const Eigen::MatrixBase<DerivedB>& b) {
  CVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace sckey
