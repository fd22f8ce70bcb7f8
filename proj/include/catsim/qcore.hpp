// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dense complex linear-algebra kernel. Everything here is a pure function of
// its arguments; hbar = 1 throughout.

#include <complex>

#include <Eigen/Dense>

namespace catsim {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Kronecker product a (x) b. Throws if either factor is empty or the product
/// would exceed Tolerances::max_total_dim rows.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

struct EigenDecomposition {
  RealVector values;       // ascending
  ComplexMatrix vectors;   // columns are eigenvectors
};

/// Hermitian spectral decomposition h = V diag(values) V^dagger.
/// Rejects inputs that are not Hermitian within Tolerances::hermitian and
/// verifies reconstruction and unitarity of V before returning.
EigenDecomposition herm_eig(const ComplexMatrix& h);

/// exp(-i h t) from the spectrum of h.
ComplexMatrix propagator(const ComplexMatrix& h, double t);
ComplexMatrix propagator(const EigenDecomposition& eig, double t);

/// exp(-i h t) applied to a vector without forming the matrix.
ComplexVector evolve(const EigenDecomposition& eig, const ComplexVector& v,
                     double t);

/// |<u|v>|^2. Both arguments must be normalized.
double fidelity(const ComplexVector& u, const ComplexVector& v);

/// max |m_ij|
double max_abs(const ComplexMatrix& m);

/// max |h - h^dagger|
double hermiticity_defect(const ComplexMatrix& h);

bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

}  // namespace catsim
