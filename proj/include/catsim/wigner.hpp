// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "catsim/hilbert.hpp"

namespace catsim {

/// Square lattice of alpha = x + i y with x, y in [-half_width, half_width].
struct PhaseGrid {
  double half_width = 1.5;  // |alpha|^2 <= 4.5 fits the default (25, guard 5) cut
  std::size_t points = 41;

  void validate() const;
  /// Row-major: the real part varies slowest.
  std::vector<cplx> alphas() const;
  double cell_area() const;
};

/// exp(alpha a^dag - alpha^* a) on one mode for many alpha from a single
/// spectral decomposition, via D(r e^{i phi}) = e^{i phi N} exp(r (a^dag - a)) e^{-i phi N}.
class DisplacementFamily {
 public:
  explicit DisplacementFamily(std::size_t dim);

  ComplexMatrix operator()(cplx alpha) const;
  /// D(alpha) v without forming the matrix.
  ComplexVector apply(cplx alpha, const ComplexVector& v) const;
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  EigenDecomposition momentum_;  // of i (a^dag - a)
};

/// W(alpha) = (2/pi) <D(alpha) P D^dag(alpha)> for a normalized single-mode state.
/// Throws Error(truncation) if any grid point violates the coherent-state bound.
std::vector<double> wigner_grid(const ComplexVector& motional, std::span<const cplx> points,
                                std::size_t guard = kDefaultGuard);

}  // namespace catsim
