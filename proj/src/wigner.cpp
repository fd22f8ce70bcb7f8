// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "catsim/error.hpp"
#include "catsim/tolerances.hpp"

namespace catsim {

void PhaseGrid::validate() const {
  if (!std::isfinite(half_width) || half_width <= 0.0) {
    fail(ErrorCode::invalid_argument, "wigner: half_width must be > 0");
  }
  if (points < 2) fail(ErrorCode::invalid_argument, "wigner: need at least 2 points per axis");
}

std::vector<cplx> PhaseGrid::alphas() const {
  validate();
  std::vector<cplx> out;
  out.reserve(points * points);
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < points; ++j) {
      out.emplace_back(-half_width + step * static_cast<double>(i),
                       -half_width + step * static_cast<double>(j));
    }
  }
  return out;
}

double PhaseGrid::cell_area() const {
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  return step * step;
}

DisplacementFamily::DisplacementFamily(std::size_t dim) : dim_(dim) {
  const ComplexMatrix a = annihilation(dim);
  momentum_ = herm_eig(kI * (a.adjoint() - a));
}

ComplexMatrix DisplacementFamily::operator()(cplx alpha) const {
  const double r = std::abs(alpha);
  const double phi = std::arg(alpha);
  // exp(r (a^dag - a)) = exp(-i r Y) with Y = i (a^dag - a).
  const ComplexMatrix radial = propagator(momentum_, r);
  const auto d = static_cast<Eigen::Index>(dim_);
  ComplexVector rot(d);
  for (Eigen::Index n = 0; n < d; ++n) rot(n) = std::exp(kI * phi * static_cast<double>(n));
  return rot.asDiagonal() * radial * rot.conjugate().asDiagonal();
}

ComplexVector DisplacementFamily::apply(cplx alpha, const ComplexVector& v) const {
  if (v.size() != static_cast<Eigen::Index>(dim_)) {
    fail(ErrorCode::dimension_mismatch, "DisplacementFamily: vector dimension mismatch");
  }
  const double r = std::abs(alpha);
  const double phi = std::arg(alpha);
  ComplexVector w(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) w(n) = std::exp(-kI * phi * static_cast<double>(n)) * v(n);
  w = evolve(momentum_, w, r);
  for (Eigen::Index n = 0; n < v.size(); ++n) w(n) *= std::exp(kI * phi * static_cast<double>(n));
  return w;
}

std::vector<double> wigner_grid(const ComplexVector& motional, std::span<const cplx> points,
                                std::size_t guard) {
  if (std::abs(motional.norm() - 1.0) > kTol.normalized) {
    fail(ErrorCode::not_normalized, "wigner_grid: state must be normalized");
  }
  const auto dim = static_cast<std::size_t>(motional.size());
  for (const cplx alpha : points) {
    if (!amplitude_fits(dim, alpha, guard)) {
      fail(ErrorCode::truncation, "wigner_grid: grid point |alpha|^2 = " +
                                      std::to_string(std::norm(alpha)) +
                                      " too large for truncation dimension " + std::to_string(dim));
    }
  }
  const DisplacementFamily family(dim);
  std::vector<double> w;
  w.reserve(points.size());
  for (const cplx alpha : points) {
    const ComplexVector shifted = family.apply(-alpha, motional);  // D^dag(alpha) psi
    double parity = 0.0;
    for (Eigen::Index n = 0; n < shifted.size(); ++n) {
      parity += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(shifted(n));
    }
    w.push_back(2.0 / std::numbers::pi * parity);
  }
  return w;
}

}  // namespace catsim
