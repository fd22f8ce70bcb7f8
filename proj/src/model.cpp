// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/model.hpp"

#include <cmath>
#include <string>

#include "catsim/error.hpp"

namespace catsim {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    fail(ErrorCode::invalid_argument, std::string("params: ") + name + " must be finite and >= 0");
  }
}

// Terms shared by the transformed Hamiltonians: everything but the g term.
Operator transformed_core(const SystemParams& p, const TruncationScheme& trunc) {
  const ComplexMatrix a = annihilation(trunc.n_vib);
  const ComplexMatrix drive = a.adjoint() - a;
  Operator h = p.nu * embed(number_operator(trunc.n_vib), Slot::vibration, trunc);
  h = h + cplx{p.omega} * embed(number_operator(trunc.n_cav), Slot::cavity, trunc);
  const ComplexMatrix iv = ComplexMatrix::Identity(trunc.n_vib, trunc.n_vib);
  const ComplexMatrix ic = ComplexMatrix::Identity(trunc.n_cav, trunc.n_cav);
  h = h + (-kI * 0.5 * p.eta * p.nu) * embed(drive, ic, sigma_x(), trunc);
  h = h + cplx{-0.5 * p.omega0} * embed(iv, ic, sigma_x(), trunc);
  h = h + cplx{0.25 * p.nu * p.eta * p.eta} * identity(trunc);
  return h;
}

}  // namespace

void SystemParams::validate() const {
  if (!std::isfinite(nu) || nu <= 0.0) fail(ErrorCode::invalid_argument, "params: nu must be > 0");
  require_nonnegative(omega, "omega");
  require_nonnegative(omega0, "omega0");
  require_nonnegative(g, "g");
  require_nonnegative(eta, "eta");
}

RegimeReport regime_report(const SystemParams& p, const RegimeThresholds& thresholds) {
  p.validate();
  RegimeReport r;
  r.ratio_drive = p.g > 0.0 ? p.eta * p.nu / p.g : std::numeric_limits<double>::infinity();
  r.ratio_ld = p.eta;
  r.regime_ok = r.ratio_drive >= thresholds.ratio_drive;
  r.beyond_ld = r.ratio_ld >= thresholds.eta_ld;
  return r;
}

Operator build_h_full(const SystemParams& p, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  const ComplexMatrix b = annihilation(trunc.n_cav);
  const ComplexMatrix iv = ComplexMatrix::Identity(trunc.n_vib, trunc.n_vib);
  const ComplexMatrix ic = ComplexMatrix::Identity(trunc.n_cav, trunc.n_cav);
  Operator h = p.nu * embed(number_operator(trunc.n_vib), Slot::vibration, trunc);
  h = h + cplx{p.omega} * embed(number_operator(trunc.n_cav), Slot::cavity, trunc);
  h = h + cplx{0.5 * p.omega0} * embed(iv, ic, sigma_z(), trunc);
  if (p.g != 0.0) {
    h = h + cplx{p.g} * embed(cos_position(trunc.n_vib, p.eta), b + b.adjoint(), sigma_x(), trunc);
  }
  return h;
}

Operator build_t(const SystemParams& p, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  const ComplexMatrix d = displacement(trunc.n_vib, p.beta(), trunc.guard);
  const ComplexMatrix dd = d.adjoint();
  const ComplexMatrix ic = ComplexMatrix::Identity(trunc.n_cav, trunc.n_cav);
  Operator t = embed(0.5 * (dd + d), ic, qubit_identity(), trunc);
  t = t + embed(0.5 * (dd - d), ic, sigma_z(), trunc);
  t = t + embed(d, ic, sigma_plus(), trunc);
  t = t - embed(dd, ic, sigma_minus(), trunc);
  return cplx{M_SQRT1_2} * t;
}

Operator build_h_transformed(const SystemParams& p, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  Operator h = transformed_core(p, trunc);
  if (p.g != 0.0) {
    const ComplexMatrix b = annihilation(trunc.n_cav);
    const ComplexMatrix iv = ComplexMatrix::Identity(trunc.n_vib, trunc.n_vib);
    h = h + cplx{p.g} * embed(iv, b + b.adjoint(), sigma_z(), trunc);
  }
  return h;
}

Operator build_h_regime(const SystemParams& p, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  return transformed_core(p, trunc);
}

Operator build_h_conjugated(const SystemParams& p, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  Operator h = transformed_core(p, trunc);
  if (p.g == 0.0) return h;

  const ComplexMatrix a = annihilation(trunc.n_vib);
  const ComplexMatrix b = annihilation(trunc.n_cav);
  const auto eig = herm_eig(a + a.adjoint());
  const RealVector c = (p.eta * eig.values).array().cos();
  const RealVector s = (p.eta * eig.values).array().sin();
  const RealVector c2 = c.array().square();
  const RealVector sc = (s.array() * c.array()).matrix();
  const ComplexMatrix cos2 = eig.vectors * c2.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  const ComplexMatrix sincos = eig.vectors * sc.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  const ComplexMatrix sigma_y = -kI * sigma_plus() + kI * sigma_minus();
  const ComplexMatrix field = b + b.adjoint();
  h = h + cplx{p.g} * embed(cos2, field, sigma_z(), trunc);
  h = h + cplx{p.g} * embed(sincos, field, sigma_y, trunc);
  return h;
}

TransformCheck transform_identity_check(const SystemParams& p, const TruncationScheme& trunc) {
  const Operator h = build_h_full(p, trunc);
  const Operator t = build_t(p, trunc);
  const Operator ht = build_h_transformed(p, trunc);
  const Operator conj = t * h * t.adjoint();

  TransformCheck out;
  out.h_max = max_abs(h.matrix);
  out.residual = interior_max_abs(conj.matrix - ht.matrix, trunc);
  out.relative = out.h_max > 0.0 ? out.residual / out.h_max : out.residual;
  out.conjugated_residual =
      interior_max_abs(conj.matrix - build_h_conjugated(p, trunc).matrix, trunc);
  const auto n = static_cast<Eigen::Index>(trunc.total_dim());
  out.t_unitarity =
      interior_max_abs(t.matrix.adjoint() * t.matrix - ComplexMatrix::Identity(n, n), trunc);
  const ComplexMatrix d = displacement(trunc.n_vib, p.beta(), trunc.guard);
  const auto m = static_cast<Eigen::Index>(trunc.interior_vib());
  out.d_unitarity =
      max_abs((d.adjoint() * d).topLeftCorner(m, m) - ComplexMatrix::Identity(m, m));
  return out;
}

}  // namespace catsim
