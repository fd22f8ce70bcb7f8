// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Hamiltonians of the ion-cavity system and the diagonalizing transformation.
// Units: hbar = 1, frequencies in units of the trap frequency nu.

#include <limits>

#include "catsim/hilbert.hpp"

namespace catsim {

struct SystemParams {
  double nu = 1.0;      // trap (vibrational) frequency
  double omega = 1.0;   // cavity frequency
  double omega0 = 0.2;  // atomic transition frequency
  double g = 0.01;      // ion-field coupling
  double eta = 0.5;     // Lamb-Dicke parameter

  /// Throws Error(invalid_argument) on nu <= 0 or any negative/non-finite field.
  void validate() const;
  /// beta = i eta / 2, the displacement used by the transformation.
  cplx beta() const { return {0.0, 0.5 * eta}; }
};

struct RegimeThresholds {
  double ratio_drive = 50.0;  // eta nu / g at or above this counts as eta nu >> g
  double eta_ld = 0.3;        // eta at or above this counts as beyond Lamb-Dicke
};

struct RegimeReport {
  double ratio_drive = std::numeric_limits<double>::infinity();
  double ratio_ld = 0.0;
  bool regime_ok = true;
  bool beyond_ld = false;
};

RegimeReport regime_report(const SystemParams& p, const RegimeThresholds& thresholds = {});

/// nu a^dag a + omega b^dag b + (omega0/2) sz + g sx (b^dag + b) cos(eta (a^dag + a))
Operator build_h_full(const SystemParams& p, const TruncationScheme& trunc);

/// The unitary
///   T = (1/sqrt2){ (D^dag + D)/2 + (D^dag - D)/2 sz + D s+ - D^dag s- },  D = D(i eta/2).
Operator build_t(const SystemParams& p, const TruncationScheme& trunc);

/// Transformed Hamiltonian with the bracket expanded:
///   nu a^dag a + omega b^dag b + g (b^dag + b) sz - i (eta nu/2)(a^dag - a) sx
///   - (omega0/2) sx + nu eta^2/4.
Operator build_h_transformed(const SystemParams& p, const TruncationScheme& trunc);

/// build_h_transformed without the g (b^dag + b) sz term.
Operator build_h_regime(const SystemParams& p, const TruncationScheme& trunc);

/// Closed form of T H T^dag for the cos coupling of build_h_full. Differs from
/// build_h_transformed only in the coupling term, which becomes
///   g (b^dag + b) [cos^2(eta x) sz + sin(eta x) cos(eta x) sy],  x = a + a^dag.
/// Used to separate truncation error from the coupling-term discrepancy.
Operator build_h_conjugated(const SystemParams& p, const TruncationScheme& trunc);

struct TransformCheck {
  double h_max = 0.0;             // max |H| entry, full space
  double residual = 0.0;          // interior max |T H T^dag - H_T|
  double relative = 0.0;          // residual / h_max
  double conjugated_residual = 0.0;  // interior max |T H T^dag - build_h_conjugated|
  double t_unitarity = 0.0;       // interior max |T^dag T - I|
  double d_unitarity = 0.0;       // interior (vib) max |D^dag D - I|
};

TransformCheck transform_identity_check(const SystemParams& p, const TruncationScheme& trunc);

}  // namespace catsim
