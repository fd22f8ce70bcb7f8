// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/hilbert.hpp"

#include <cmath>
#include <string>

#include "catsim/error.hpp"
#include "catsim/tolerances.hpp"

namespace catsim {

void TruncationScheme::validate() const {
  if (n_vib < 2 || n_cav < 2) {
    fail(ErrorCode::invalid_argument, "truncation: n_vib and n_cav must be >= 2");
  }
  if (guard == 0 || guard >= std::min(n_vib, n_cav)) {
    fail(ErrorCode::invalid_argument,
         "truncation: guard must satisfy 0 < guard < min(n_vib, n_cav), got guard = " +
             std::to_string(guard));
  }
  if (total_dim() > kTol.max_total_dim) {
    fail(ErrorCode::dimension_mismatch, "truncation: total dimension " +
                                            std::to_string(total_dim()) + " exceeds maximum " +
                                            std::to_string(kTol.max_total_dim));
  }
}

std::size_t SpaceSignature::dim(Slot slot) const {
  switch (slot) {
    case Slot::vibration: return n_vib;
    case Slot::cavity: return n_cav;
    case Slot::qubit: return n_qubit;
  }
  return 0;
}

void require_same(const SpaceSignature& a, const SpaceSignature& b, const char* where) {
  if (!(a == b)) {
    fail(ErrorCode::dimension_mismatch, std::string(where) + ": space signature mismatch");
  }
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same(a.signature, b.signature, "operator product");
  return {a.matrix * b.matrix, a.signature};
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same(a.signature, b.signature, "operator sum");
  return {a.matrix + b.matrix, a.signature};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same(a.signature, b.signature, "operator difference");
  return {a.matrix - b.matrix, a.signature};
}

Operator operator*(cplx s, const Operator& a) { return {s * a.matrix, a.signature}; }

ComplexMatrix annihilation(std::size_t dim) {
  if (dim < 2) fail(ErrorCode::invalid_argument, "annihilation: dim must be >= 2");
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix creation(std::size_t dim) { return annihilation(dim).adjoint(); }

ComplexMatrix number_operator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix n = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

ComplexMatrix parity_operator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

ComplexVector fock_state(std::size_t dim, std::size_t n) {
  if (n >= dim) {
    fail(ErrorCode::invalid_argument, "fock_state: n = " + std::to_string(n) +
                                          " outside dimension " + std::to_string(dim));
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(n)) = 1.0;
  return v;
}

bool amplitude_fits(std::size_t dim, cplx alpha, std::size_t guard) {
  if (guard >= dim) return false;
  return std::norm(alpha) <= static_cast<double>(dim - guard) / 4.0;
}

CoherentState coherent_state(std::size_t dim, cplx alpha, std::size_t guard) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "coherent_state: empty dimension");
  if (!amplitude_fits(dim, alpha, guard)) {
    fail(ErrorCode::truncation, "coherent_state: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                    " too large for truncation dimension " + std::to_string(dim));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexVector c(d);
  // Recurrence c_n = c_{n-1} alpha / sqrt(n) keeps c_n(-alpha) = (-1)^n c_n(alpha) bit-exact.
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < d; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  const double norm2 = c.squaredNorm();
  CoherentState out{c / std::sqrt(norm2), std::max(0.0, 1.0 - norm2)};
  if (out.leakage > kTol.coherent_leakage) {
    fail(ErrorCode::truncation, "coherent_state: truncation leakage " +
                                    std::to_string(out.leakage) + " for dimension " +
                                    std::to_string(dim));
  }
  return out;
}

ComplexMatrix displacement(std::size_t dim, cplx alpha, std::size_t guard) {
  if (!amplitude_fits(dim, alpha, guard)) {
    fail(ErrorCode::truncation, "displacement: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                    " too large for truncation dimension " + std::to_string(dim));
  }
  const ComplexMatrix a = annihilation(dim);
  if (alpha == cplx{0.0, 0.0}) return ComplexMatrix::Identity(a.rows(), a.cols());
  const ComplexMatrix generator = kI * (alpha * a.adjoint() - std::conj(alpha) * a);
  return propagator(generator, 1.0);
}

ComplexMatrix cos_position(std::size_t dim, double eta) {
  if (eta < 0.0) fail(ErrorCode::invalid_argument, "cos_position: eta must be >= 0");
  const ComplexMatrix a = annihilation(dim);
  if (eta == 0.0) return ComplexMatrix::Identity(a.rows(), a.cols());
  const auto eig = herm_eig(a + a.adjoint());
  RealVector c = (eta * eig.values).array().cos();
  return eig.vectors * c.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix qubit_identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix sigma_z() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(kExcited, kExcited) = 1.0;
  s(kGround, kGround) = -1.0;
  return s;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(kExcited, kGround) = 1.0;
  return s;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(kGround, kExcited) = 1.0;
  return s;
}

ComplexMatrix sigma_x() { return sigma_plus() + sigma_minus(); }

ComplexMatrix projector(Eigen::Index level) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(level, level) = 1.0;
  return p;
}

Operator embed(const ComplexMatrix& vib, const ComplexMatrix& cav, const ComplexMatrix& qubit,
               const TruncationScheme& trunc) {
  const auto sig = SpaceSignature::of(trunc);
  if (vib.rows() != static_cast<Eigen::Index>(sig.n_vib) || vib.cols() != vib.rows() ||
      cav.rows() != static_cast<Eigen::Index>(sig.n_cav) || cav.cols() != cav.rows() ||
      qubit.rows() != 2 || qubit.cols() != 2) {
    fail(ErrorCode::dimension_mismatch, "embed: factor dimensions do not match the truncation");
  }
  return {kron(kron(vib, cav), qubit), sig};
}

Operator embed(const ComplexMatrix& op, Slot slot, const TruncationScheme& trunc) {
  const auto sig = SpaceSignature::of(trunc);
  const auto expected = static_cast<Eigen::Index>(sig.dim(slot));
  if (op.rows() != expected || op.cols() != expected) {
    fail(ErrorCode::dimension_mismatch, "embed: operator dimension does not match slot");
  }
  const ComplexMatrix iv = ComplexMatrix::Identity(sig.n_vib, sig.n_vib);
  const ComplexMatrix ic = ComplexMatrix::Identity(sig.n_cav, sig.n_cav);
  switch (slot) {
    case Slot::vibration: return embed(op, ic, qubit_identity(), trunc);
    case Slot::cavity: return embed(iv, op, qubit_identity(), trunc);
    case Slot::qubit: return embed(iv, ic, op, trunc);
  }
  fail(ErrorCode::invalid_argument, "embed: unknown slot");
}

Operator identity(const TruncationScheme& trunc) {
  const auto sig = SpaceSignature::of(trunc);
  const auto n = static_cast<Eigen::Index>(sig.total());
  return {ComplexMatrix::Identity(n, n), sig};
}

std::vector<Eigen::Index> interior_indices(const TruncationScheme& trunc) {
  const auto sig = SpaceSignature::of(trunc);
  std::vector<Eigen::Index> idx;
  idx.reserve(trunc.interior_vib() * trunc.interior_cav() * 2);
  for (std::size_t nv = 0; nv < trunc.interior_vib(); ++nv) {
    for (std::size_t nc = 0; nc < trunc.interior_cav(); ++nc) {
      for (Eigen::Index q = 0; q < 2; ++q) idx.push_back(composite_index(sig, nv, nc, q));
    }
  }
  return idx;
}

ComplexMatrix interior_block(const ComplexMatrix& m, const TruncationScheme& trunc) {
  const auto idx = interior_indices(trunc);
  if (m.rows() != static_cast<Eigen::Index>(trunc.total_dim()) || m.cols() != m.rows()) {
    fail(ErrorCode::dimension_mismatch, "interior_block: matrix does not match truncation");
  }
  return m(idx, idx);
}

double interior_max_abs(const ComplexMatrix& m, const TruncationScheme& trunc) {
  return max_abs(interior_block(m, trunc));
}

}  // namespace catsim
