// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catsim/error.hpp"
#include "catsim/tolerances.hpp"

namespace catsim {

namespace {

void check_product_dim(Eigen::Index a, Eigen::Index b) {
  if (a <= 0 || b <= 0) fail(ErrorCode::invalid_argument, "kron: empty factor");
  const auto total = static_cast<std::size_t>(a) * static_cast<std::size_t>(b);
  if (total > kTol.max_total_dim) {
    fail(ErrorCode::dimension_mismatch,
         "kron: dimension " + std::to_string(total) + " exceeds maximum " +
             std::to_string(kTol.max_total_dim));
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_product_dim(a.rows(), b.rows());
  check_product_dim(a.cols(), b.cols());
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  check_product_dim(a.size(), b.size());
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& h) {
  return max_abs(h - h.adjoint());
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }
bool all_finite(const ComplexVector& v) { return v.allFinite(); }

EigenDecomposition herm_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    fail(ErrorCode::dimension_mismatch, "herm_eig: matrix must be square and non-empty");
  }
  if (!all_finite(h)) fail(ErrorCode::invalid_argument, "herm_eig: non-finite entry");
  const double defect = hermiticity_defect(h);
  if (defect > kTol.hermitian) {
    fail(ErrorCode::not_hermitian,
         "herm_eig: input not Hermitian (defect " + std::to_string(defect) + ")");
  }

  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hs);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::no_convergence, "herm_eig: eigensolver did not converge");
  }

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const Eigen::Index n = h.rows();
  const double scale = std::max(max_abs(h), 1.0);
  const ComplexMatrix rebuilt =
      out.vectors * out.values.cast<cplx>().asDiagonal() * out.vectors.adjoint();
  if (max_abs(rebuilt - h) > kTol.reconstruction * scale) {
    fail(ErrorCode::no_convergence, "herm_eig: reconstruction check failed");
  }
  const ComplexMatrix gram = out.vectors.adjoint() * out.vectors;
  if (max_abs(gram - ComplexMatrix::Identity(n, n)) > kTol.eigvec_unitary) {
    fail(ErrorCode::no_convergence, "herm_eig: eigenvectors not orthonormal");
  }
  return out;
}

ComplexMatrix propagator(const EigenDecomposition& eig, double t) {
  const Eigen::Index n = eig.values.size();
  ComplexVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(-kI * eig.values(k) * t);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  if (t == 0.0) {
    // Still validate the input so errors do not depend on t.
    herm_eig(h);
    return ComplexMatrix::Identity(h.rows(), h.cols());
  }
  return propagator(herm_eig(h), t);
}

ComplexVector evolve(const EigenDecomposition& eig, const ComplexVector& v, double t) {
  if (v.size() != eig.values.size()) {
    fail(ErrorCode::dimension_mismatch, "evolve: state dimension does not match operator");
  }
  ComplexVector coeff = eig.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(-kI * eig.values(k) * t);
  return eig.vectors * coeff;
}

double fidelity(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) fail(ErrorCode::dimension_mismatch, "fidelity: dimension mismatch");
  if (std::abs(u.norm() - 1.0) > kTol.normalized || std::abs(v.norm() - 1.0) > kTol.normalized) {
    fail(ErrorCode::not_normalized, "fidelity: inputs must be normalized");
  }
  const double f = std::norm(u.dot(v));
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace catsim
