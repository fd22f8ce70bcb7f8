// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/dynamics.hpp"

#include <cmath>
#include <string>

#include "catsim/error.hpp"
#include "catsim/tolerances.hpp"

namespace catsim {

namespace {

void require_normalized(const ComplexVector& v, const char* where) {
  if (std::abs(v.norm() - 1.0) > kTol.normalized) {
    fail(ErrorCode::not_normalized, std::string(where) + ": input state is not normalized");
  }
}

ComplexVector free_phases(std::size_t dim, double freq, double t) {
  ComplexVector f(static_cast<Eigen::Index>(dim));
  for (Eigen::Index n = 0; n < f.size(); ++n) f(n) = std::exp(-kI * freq * static_cast<double>(n) * t);
  return f;
}

}  // namespace

PureState apply(const Operator& op, const PureState& psi) {
  require_same(op.signature, psi.signature, "apply");
  return {op.matrix * psi.amplitudes, psi.signature, psi.norm_deficit};
}

double fidelity(const PureState& a, const PureState& b) {
  require_same(a.signature, b.signature, "fidelity");
  return fidelity(a.amplitudes, b.amplitudes);
}

PureState initial_state(const TruncationScheme& trunc) {
  trunc.validate();
  ComplexVector qubit(2);
  qubit << M_SQRT1_2, M_SQRT1_2;
  return {kron(kron(fock_state(trunc.n_vib, 0), fock_state(trunc.n_cav, 0)), qubit),
          SpaceSignature::of(trunc), 0.0};
}

SpectralEvolver::SpectralEvolver(const Operator& h) : sig_(h.signature), eig_(herm_eig(h.matrix)) {}

PureState SpectralEvolver::at(const PureState& psi0, double t) const {
  require_same(sig_, psi0.signature, "SpectralEvolver");
  if (t == 0.0) return psi0;
  return {evolve(eig_, psi0.amplitudes, t), sig_, psi0.norm_deficit};
}

ComplexMatrix SpectralEvolver::propagator(double t) const { return catsim::propagator(eig_, t); }

FrameEvolver::FrameEvolver(const Operator& h_frame, const Operator& transform)
    : sig_(h_frame.signature), transform_(transform), eig_(herm_eig(h_frame.matrix)) {
  require_same(h_frame.signature, transform.signature, "FrameEvolver");
  back_ = transform_.matrix.adjoint() * eig_.vectors;
}

PureState FrameEvolver::at(const PureState& psi0, double t) const {
  require_same(sig_, psi0.signature, "FrameEvolver");
  ComplexVector coeff = back_.adjoint() * psi0.amplitudes;  // V^dag T psi0
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(-kI * eig_.values(k) * t);
  return {back_ * coeff, sig_, psi0.norm_deficit};
}

ComplexMatrix FrameEvolver::propagator(double t) const {
  ComplexVector phases(eig_.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * eig_.values(k) * t);
  return back_ * phases.asDiagonal() * back_.adjoint();
}

ComplexMatrix FrameEvolver::propagator_block(double t, const std::vector<Eigen::Index>& idx) const {
  ComplexVector phases(eig_.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * eig_.values(k) * t);
  const ComplexMatrix rows = back_(idx, Eigen::all);
  return rows * phases.asDiagonal() * rows.adjoint();
}

Observables observables(const PureState& psi) {
  const auto& sig = psi.signature;
  Observables o;
  for (std::size_t nv = 0; nv < sig.n_vib; ++nv) {
    for (std::size_t nc = 0; nc < sig.n_cav; ++nc) {
      for (Eigen::Index q = 0; q < 2; ++q) {
        const double pop = std::norm(psi.amplitudes(composite_index(sig, nv, nc, q)));
        (q == kExcited ? o.p_e : o.p_g) += pop;
        o.n_vib += static_cast<double>(nv) * pop;
        o.n_cav += static_cast<double>(nc) * pop;
        o.parity += (nv % 2 == 0 ? pop : -pop);
      }
    }
  }
  return o;
}

double edge_population(const PureState& psi) {
  const auto& sig = psi.signature;
  double pop = 0.0;
  for (std::size_t nv = 0; nv < sig.n_vib; ++nv) {
    for (std::size_t nc = 0; nc < sig.n_cav; ++nc) {
      if (nv + 1 != sig.n_vib && nc + 1 != sig.n_cav) continue;
      for (Eigen::Index q = 0; q < 2; ++q) pop += std::norm(psi.amplitudes(composite_index(sig, nv, nc, q)));
    }
  }
  return pop;
}

std::vector<double> uniform_times(double t_max, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {0.0};
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
  return t;
}

TrajectoryRecord record_trajectory(const StateAt& evolved, std::span<const double> times,
                                   const StateAt& reference) {
  TrajectoryRecord rec;
  double previous = 0.0;
  for (const double t : times) {
    if (t < 0.0 || t < previous) {
      fail(ErrorCode::invalid_argument, "evolve: times must be sorted and nonnegative");
    }
    previous = t;
    const PureState psi = evolved(t);
    const double norm = psi.norm();
    if (!all_finite(psi.amplitudes) || std::abs(norm - 1.0) > kTol.norm_drift) {
      fail(ErrorCode::truncation, "evolve: norm drift " + std::to_string(norm - 1.0) +
                                      " at t = " + std::to_string(t) + "; truncation too small");
    }
    const double edge = edge_population(psi);
    if (edge > kTol.edge_population) {
      fail(ErrorCode::truncation, "evolve: population " + std::to_string(edge) +
                                      " reached the top Fock level at t = " + std::to_string(t) +
                                      "; truncation too small");
    }
    rec.times.push_back(t);
    rec.norms.push_back(norm);
    rec.obs.push_back(observables(psi));
    rec.edge_population.push_back(edge);
    if (reference) {
      PureState normalized = psi;
      normalized.amplitudes /= norm;
      rec.fidelity.push_back(fidelity(reference(t), normalized));
    }
  }
  return rec;
}

TrajectoryRecord evolve_numeric(const Operator& h, const PureState& psi0,
                                std::span<const double> times, const StateAt& reference) {
  const SpectralEvolver evolver(h);
  return record_trajectory([&](double t) { return evolver.at(psi0, t); }, times, reference);
}

Operator analytic_propagator(const SystemParams& p, double t, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  const ComplexMatrix d = displacement(trunc.n_vib, p.beta(), trunc.guard);
  const ComplexVector fv = free_phases(trunc.n_vib, p.nu, t);
  const ComplexVector fc = free_phases(trunc.n_cav, p.omega, t);
  const ComplexMatrix rotation = std::cos(0.5 * p.omega0 * t) * qubit_identity() +
                                 kI * std::sin(0.5 * p.omega0 * t) * sigma_x();
  const ComplexMatrix cav = fc.asDiagonal();
  return embed(fv.asDiagonal() * d, cav, projector(kExcited) * rotation, trunc) +
         embed(fv.asDiagonal() * d.adjoint(), cav, projector(kGround) * rotation, trunc);
}

PureState analytic_state(const SystemParams& p, double t, const TruncationScheme& trunc) {
  p.validate();
  trunc.validate();
  const cplx beta_t = std::exp(-kI * p.nu * t) * p.beta();
  const CoherentState plus = coherent_state(trunc.n_vib, beta_t, trunc.guard);
  const CoherentState minus = coherent_state(trunc.n_vib, -beta_t, trunc.guard);
  const cplx prefactor = std::exp(-kI * 0.5 * p.omega0 * t) * M_SQRT1_2;
  const ComplexVector vac = fock_state(trunc.n_cav, 0);
  const ComplexVector amps = kron(kron(plus.amplitudes, vac), fock_state(2, kExcited)) +
                             kron(kron(minus.amplitudes, vac), fock_state(2, kGround));
  return {prefactor * amps, SpaceSignature::of(trunc), std::max(plus.leakage, minus.leakage)};
}

ComplexMatrix pulse_v() {
  ComplexMatrix v(2, 2);
  v << M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2, M_SQRT1_2;
  return v;
}

PureState apply_pulse_v(const PureState& psi) {
  require_normalized(psi.amplitudes, "apply_pulse_v");
  PureState out = psi;
  const auto& sig = psi.signature;
  for (std::size_t nv = 0; nv < sig.n_vib; ++nv) {
    for (std::size_t nc = 0; nc < sig.n_cav; ++nc) {
      const auto ie = composite_index(sig, nv, nc, kExcited);
      const auto ig = composite_index(sig, nv, nc, kGround);
      const cplx e = psi.amplitudes(ie);
      const cplx g = psi.amplitudes(ig);
      out.amplitudes(ie) = M_SQRT1_2 * (e + g);
      out.amplitudes(ig) = M_SQRT1_2 * (g - e);
    }
  }
  return out;
}

CollapseResult collapse_measure(const PureState& psi, Level outcome, bool require_cavity_vacuum) {
  require_normalized(psi.amplitudes, "collapse_measure");
  const auto& sig = psi.signature;
  const Eigen::Index q = index_of(outcome);
  const std::size_t n_cav_kept = require_cavity_vacuum ? 1 : sig.n_cav;
  ComplexVector v(static_cast<Eigen::Index>(sig.n_vib * n_cav_kept));
  for (std::size_t nv = 0; nv < sig.n_vib; ++nv) {
    for (std::size_t nc = 0; nc < n_cav_kept; ++nc) {
      v(static_cast<Eigen::Index>(nv * n_cav_kept + nc)) = psi.amplitudes(composite_index(sig, nv, nc, q));
    }
  }
  CollapseResult r;
  r.cavity_projected = require_cavity_vacuum;
  r.probability = v.squaredNorm();
  r.possible = r.probability > kTol.probability_floor;
  if (r.possible) r.state = v / std::sqrt(r.probability);
  return r;
}

double OutcomeTable::total() const {
  return probabilities[0][0] + probabilities[0][1] + probabilities[1][0] + probabilities[1][1];
}

OutcomeTable outcome_probabilities(const PureState& psi) {
  const auto& sig = psi.signature;
  OutcomeTable table;
  for (std::size_t nv = 0; nv < sig.n_vib; ++nv) {
    for (std::size_t nc = 0; nc < sig.n_cav; ++nc) {
      for (Eigen::Index q = 0; q < 2; ++q) {
        table.probabilities[q][nc == 0 ? 0 : 1] += std::norm(psi.amplitudes(composite_index(sig, nv, nc, q)));
      }
    }
  }
  return table;
}

CatState cat_state(cplx beta_t, Branch branch, std::size_t dim, NormalizationMode mode,
                   std::size_t guard) {
  if (branch == Branch::minus && beta_t == cplx{0.0, 0.0}) {
    fail(ErrorCode::degenerate, "cat_state: odd cat with beta_t = 0 is the zero vector");
  }
  const CoherentState plus = coherent_state(dim, beta_t, guard);
  const CoherentState minus = coherent_state(dim, -beta_t, guard);
  ComplexVector v = branch == Branch::plus ? ComplexVector(plus.amplitudes + minus.amplitudes)
                                           : ComplexVector(plus.amplitudes - minus.amplitudes);
  if (mode == NormalizationMode::bare) {
    v *= M_SQRT1_2;
  } else {
    const double n = v.norm();
    if (n * n < kTol.probability_floor) {
      fail(ErrorCode::degenerate, "cat_state: superposition vanishes numerically");
    }
    v /= n;
  }
  return {branch, beta_t, mode, std::move(v)};
}

double motional_parity(const ComplexVector& v) {
  double p = 0.0;
  for (Eigen::Index n = 0; n < v.size(); ++n) p += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(v(n));
  return p;
}

double motional_mean_number(const ComplexVector& v) {
  double m = 0.0;
  for (Eigen::Index n = 0; n < v.size(); ++n) m += static_cast<double>(n) * std::norm(v(n));
  return m;
}

double motional_fidelity(const ComplexVector& u, const ComplexVector& v) { return fidelity(u, v); }

ValidationReport validation_run(const SystemParams& p, const TruncationScheme& trunc,
                                std::span<const double> times, const RegimeThresholds& thresholds) {
  ValidationReport report;
  report.regime = regime_report(p, thresholds);

  const Operator t_op = build_t(p, trunc);
  const FrameEvolver regime(build_h_regime(p, trunc), t_op);
  const SpectralEvolver full(build_h_full(p, trunc));
  const PureState psi0 = initial_state(trunc);
  const auto idx = interior_indices(trunc);

  const StateAt reference = [&](double t) { return analytic_state(p, t, trunc); };
  const auto track_a = record_trajectory([&](double t) { return regime.at(psi0, t); }, times, reference);
  const auto track_b = record_trajectory([&](double t) { return full.at(psi0, t); }, times, reference);

  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const ComplexMatrix analytic = analytic_propagator(p, t, trunc).matrix(idx, idx);
    report.samples.push_back({t, track_a.fidelity[k], track_b.fidelity[k],
                              max_abs(analytic - regime.propagator_block(t, idx))});
  }
  return report;
}

}  // namespace catsim
