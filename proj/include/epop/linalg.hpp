// Copyright 2026 The epop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense helpers shared by the mixed-state and oracle code. All of them
// accept any Eigen expression and work for real or complex scalars.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace epop {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

template <typename Derived>
using PlainMatrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived> &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<PlainMatrix<Derived>> svd(m.eval());
  return svd.singularValues().sum();
}

template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived> &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<PlainMatrix<Derived>> svd(m.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived> &m) {
  if (m.size() == 0) return 0.0;
  PlainMatrix<Derived> h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<PlainMatrix<Derived>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

template <typename Derived>
double max_eigenvalue(const Eigen::MatrixBase<Derived> &m) {
  if (m.size() == 0) return 0.0;
  PlainMatrix<Derived> h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<PlainMatrix<Derived>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// f applied to the spectrum of the Hermitian part of m.
template <typename Derived, typename F>
PlainMatrix<Derived> hermitian_apply(const Eigen::MatrixBase<Derived> &m, F f) {
  PlainMatrix<Derived> h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<PlainMatrix<Derived>> es(h);
  Eigen::VectorXd vals = es.eigenvalues().unaryExpr([&](double v) { return f(v); });
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Derived>
PlainMatrix<Derived> psd_sqrt(const Eigen::MatrixBase<Derived> &m) {
  return hermitian_apply(m, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

// Inverse square root on the numerical support (eigenvalues above rel * max),
// zero on the kernel.
template <typename Derived>
PlainMatrix<Derived> support_inverse_sqrt(const Eigen::MatrixBase<Derived> &m, double rel = 1e-12) {
  double top = std::max(max_eigenvalue(m), 0.0);
  double cut = rel * top;
  return hermitian_apply(m, [cut](double v) { return v > cut && v > 0.0 ? 1.0 / std::sqrt(v) : 0.0; });
}

template <typename Derived>
PlainMatrix<Derived> hermitian_exp(const Eigen::MatrixBase<Derived> &m) {
  return hermitian_apply(m, [](double v) { return std::exp(v); });
}

}  // namespace epop
