// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Time evolution and the pulse-and-measure cat preparation protocol.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "catsim/model.hpp"

namespace catsim {

struct PureState {
  ComplexVector amplitudes;
  SpaceSignature signature;
  double norm_deficit = 0.0;  // truncation leakage carried from construction

  double norm() const { return amplitudes.norm(); }
};

PureState apply(const Operator& op, const PureState& psi);
/// Global-phase-insensitive overlap of two composite states.
double fidelity(const PureState& a, const PureState& b);

enum class Level { excited, ground };
inline Eigen::Index index_of(Level l) { return l == Level::excited ? kExcited : kGround; }

/// |0>_vib |0>_cav (|e> + |g>)/sqrt2
PureState initial_state(const TruncationScheme& trunc);

/// exp(-i H t) from one cached spectral decomposition of H.
class SpectralEvolver {
 public:
  explicit SpectralEvolver(const Operator& h);

  PureState at(const PureState& psi0, double t) const;
  ComplexMatrix propagator(double t) const;
  const EigenDecomposition& spectrum() const { return eig_; }

 private:
  SpaceSignature sig_;
  EigenDecomposition eig_;
};

/// T^dag exp(-i H_T t) T: evolution generated in the transformed frame and
/// mapped back to the original representation.
class FrameEvolver {
 public:
  FrameEvolver(const Operator& h_frame, const Operator& transform);

  PureState at(const PureState& psi0, double t) const;
  ComplexMatrix propagator(double t) const;
  /// Rows/columns `idx` of propagator(t), without forming the full matrix.
  ComplexMatrix propagator_block(double t, const std::vector<Eigen::Index>& idx) const;

 private:
  SpaceSignature sig_;
  Operator transform_;
  EigenDecomposition eig_;
  ComplexMatrix back_;  // T^dag V
};

struct Observables {
  double p_e = 0.0;
  double p_g = 0.0;
  double n_vib = 0.0;
  double n_cav = 0.0;
  double parity = 0.0;  // <(-1)^{a^dag a}>
};

Observables observables(const PureState& psi);
/// Population of the highest Fock level of either mode.
double edge_population(const PureState& psi);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<double> fidelity;  // to the reference state, when one is given
  std::vector<Observables> obs;
  std::vector<double> edge_population;
};

using StateAt = std::function<PureState(double)>;

/// Samples `evolved` at each time, checking norm conservation and edge
/// population; throws Error(truncation) when either is out of tolerance.
TrajectoryRecord record_trajectory(const StateAt& evolved, std::span<const double> times,
                                   const StateAt& reference = {});

/// Brute-force evolution exp(-i H t) psi0.
TrajectoryRecord evolve_numeric(const Operator& h, const PureState& psi0,
                                std::span<const double> times, const StateAt& reference = {});

/// n points uniformly over [0, t_max], both endpoints included.
std::vector<double> uniform_times(double t_max, std::size_t n);

/// Closed-form propagator
///   e^{-i omega b^dag b t} e^{-i nu a^dag a t} (1/2){[D^dag + D] - [D^dag - D] sz}
///   [cos(omega0 t/2) + i sx sin(omega0 t/2)]
/// assembled as written. Not the identity at t = 0.
Operator analytic_propagator(const SystemParams& p, double t, const TruncationScheme& trunc);

/// e^{-i omega0 t/2}/sqrt2 [|e^{-i nu t} beta>|e> + |-e^{-i nu t} beta>|g>] |0>_cav
PureState analytic_state(const SystemParams& p, double t, const TruncationScheme& trunc);

/// V = (1/sqrt2)[[1, 1], [-1, 1]] in the (e, g) basis.
ComplexMatrix pulse_v();
PureState apply_pulse_v(const PureState& psi);

struct CollapseResult {
  bool possible = false;     // false when the outcome has zero probability
  double probability = 0.0;
  bool cavity_projected = false;
  ComplexVector state;       // vib slot if cavity_projected, else vib (x) cav
};

CollapseResult collapse_measure(const PureState& psi, Level outcome, bool require_cavity_vacuum);

/// probabilities[level][0] for cavity vacuum, [level][1] for cavity not in vacuum.
struct OutcomeTable {
  double probabilities[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double total() const;
};
OutcomeTable outcome_probabilities(const PureState& psi);

enum class Branch { plus, minus };
enum class NormalizationMode { bare, proper };  // bare: fixed 1/sqrt2 prefactor

struct CatState {
  Branch branch = Branch::plus;
  cplx beta_t;
  NormalizationMode mode = NormalizationMode::proper;
  ComplexVector amplitudes;  // vibrational slot

  double squared_norm() const { return amplitudes.squaredNorm(); }
};

/// (|beta_t> +/- |-beta_t>) scaled by 1/sqrt2 (bare) or normalized to unit norm.
/// Throws Error(degenerate) for the minus branch at beta_t = 0.
CatState cat_state(cplx beta_t, Branch branch, std::size_t dim,
                   NormalizationMode mode = NormalizationMode::proper,
                   std::size_t guard = kDefaultGuard);

double motional_parity(const ComplexVector& v);
double motional_mean_number(const ComplexVector& v);
/// |<u|v>|^2 for motional states; both normalized.
double motional_fidelity(const ComplexVector& u, const ComplexVector& v);

struct ValidationSample {
  double time = 0.0;
  double fidelity_regime = 0.0;       // analytic state vs evolution under the regime Hamiltonian
  double fidelity_full = 0.0;         // analytic state vs evolution under the full Hamiltonian
  double propagator_deviation = 0.0;  // interior max |U_analytic - T^dag U_regime T|
};

struct ValidationReport {
  RegimeReport regime;
  std::vector<ValidationSample> samples;
};

ValidationReport validation_run(const SystemParams& p, const TruncationScheme& trunc,
                                std::span<const double> times,
                                const RegimeThresholds& thresholds = {});

}  // namespace catsim
