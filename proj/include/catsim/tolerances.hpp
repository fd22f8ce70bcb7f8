// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace catsim {

// Every numeric threshold used by the library lives here.
struct Tolerances {
  double hermitian = 1e-10;          // max |h - h^dagger| entry
  double reconstruction = 1e-9;      // relative, V diag(l) V^dagger vs h
  double eigvec_unitary = 1e-10;
  double propagator_unitary = 1e-9;
  double normalized = 1e-10;         // |norm - 1| for "normalized" inputs
  double norm_drift = 1e-8;          // evolved states
  double edge_population = 1e-8;     // top Fock level population
  double coherent_leakage = 1e-10;   // pre-renormalization norm deficit
  double probability_floor = 1e-14;  // below this an outcome counts as impossible
  double transform_identity = 1e-6;  // relative interior residual of T H T^dag vs H_T
  std::size_t max_total_dim = 4096;
};

inline constexpr Tolerances kTol{};

}  // namespace catsim
