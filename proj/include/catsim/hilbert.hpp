// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Composite space vibration (x) cavity (x) qubit, in that fixed order.
// Qubit basis order is (e, g) with sigma_z |e> = +|e>.

#include <cstddef>
#include <vector>

#include "catsim/qcore.hpp"

namespace catsim {

inline constexpr std::size_t kDefaultGuard = 5;
inline constexpr Eigen::Index kExcited = 0;
inline constexpr Eigen::Index kGround = 1;

struct TruncationScheme {
  std::size_t n_vib = 25;
  std::size_t n_cav = 8;
  std::size_t guard = kDefaultGuard;

  /// Throws Error(invalid_argument) unless n_vib, n_cav >= 2 and
  /// 0 < guard < min(n_vib, n_cav).
  void validate() const;
  std::size_t total_dim() const { return 2 * n_vib * n_cav; }
  std::size_t interior_vib() const { return n_vib - guard; }
  std::size_t interior_cav() const { return n_cav - guard; }
};

enum class Slot { vibration, cavity, qubit };

struct SpaceSignature {
  std::size_t n_vib = 0;
  std::size_t n_cav = 0;
  std::size_t n_qubit = 2;

  static SpaceSignature of(const TruncationScheme& trunc) {
    return {trunc.n_vib, trunc.n_cav, 2};
  }
  std::size_t total() const { return n_vib * n_cav * n_qubit; }
  std::size_t dim(Slot slot) const;
  bool operator==(const SpaceSignature&) const = default;
};

/// A matrix on the composite space together with the space it acts on.
struct Operator {
  ComplexMatrix matrix;
  SpaceSignature signature;

  Operator adjoint() const { return {matrix.adjoint(), signature}; }
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);
void require_same(const SpaceSignature& a, const SpaceSignature& b, const char* where);

// Single-mode building blocks.
ComplexMatrix annihilation(std::size_t dim);
ComplexMatrix creation(std::size_t dim);
ComplexMatrix number_operator(std::size_t dim);
ComplexMatrix parity_operator(std::size_t dim);

ComplexVector fock_state(std::size_t dim, std::size_t n);
inline bool in_guard_band(std::size_t n, std::size_t dim, std::size_t guard) {
  return n + guard >= dim;
}

struct CoherentState {
  ComplexVector amplitudes;  // unit norm after renormalization
  double leakage = 0.0;      // 1 - (norm before renormalization)^2
};

/// Truncated coherent state e^{-|a|^2/2} a^n / sqrt(n!), renormalized.
/// Throws Error(truncation) if |alpha|^2 > (dim - guard)/4 or the truncation
/// leakage exceeds Tolerances::coherent_leakage.
CoherentState coherent_state(std::size_t dim, cplx alpha, std::size_t guard = kDefaultGuard);

/// True when |alpha|^2 <= (dim - guard)/4.
bool amplitude_fits(std::size_t dim, cplx alpha, std::size_t guard);

/// exp(alpha a^dagger - alpha^* a) as the spectral propagator of the Hermitian
/// generator i(alpha a^dagger - alpha^* a) over unit time.
ComplexMatrix displacement(std::size_t dim, cplx alpha, std::size_t guard = kDefaultGuard);

/// cos(eta (a + a^dagger)) from the spectrum of the truncated position operator.
ComplexMatrix cos_position(std::size_t dim, double eta);

// Qubit operators, basis (e, g).
ComplexMatrix qubit_identity();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();   // |e><g|
ComplexMatrix sigma_minus();  // |g><e|
ComplexMatrix sigma_x();
ComplexMatrix projector(Eigen::Index level);

/// Lift a single-slot operator into the composite space.
Operator embed(const ComplexMatrix& op, Slot slot, const TruncationScheme& trunc);
/// vib (x) cav (x) qubit for three factors at once.
Operator embed(const ComplexMatrix& vib, const ComplexMatrix& cav, const ComplexMatrix& qubit,
               const TruncationScheme& trunc);
Operator identity(const TruncationScheme& trunc);

inline Eigen::Index composite_index(const SpaceSignature& sig, std::size_t nv, std::size_t nc,
                                    Eigen::Index q) {
  return static_cast<Eigen::Index>((nv * sig.n_cav + nc) * sig.n_qubit) + q;
}

/// Composite indices whose vibrational and cavity Fock numbers both lie
/// below the guard band.
std::vector<Eigen::Index> interior_indices(const TruncationScheme& trunc);
ComplexMatrix interior_block(const ComplexMatrix& m, const TruncationScheme& trunc);
/// max |m_ij| over the interior block.
double interior_max_abs(const ComplexMatrix& m, const TruncationScheme& trunc);

}  // namespace catsim
