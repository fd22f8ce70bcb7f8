// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "catsim/dynamics.hpp"
#include "catsim/error.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace catsim;

namespace {

SystemParams params(double eta, double g) {
  SystemParams p;
  p.eta = eta;
  p.g = g;
  return p;
}

// Vibrational amplitudes of the qubit branch q with the cavity in vacuum.
ComplexVector branch(const PureState& psi, Eigen::Index q) {
  ComplexVector v(static_cast<Eigen::Index>(psi.signature.n_vib));
  for (std::size_t nv = 0; nv < psi.signature.n_vib; ++nv) {
    v(static_cast<Eigen::Index>(nv)) = psi.amplitudes(composite_index(psi.signature, nv, 0, q));
  }
  return v;
}

// Proper cat built from the closed-form coherent amplitudes.
ComplexVector oracle_cat(std::size_t dim, cplx beta, double sign) {
  ComplexVector v = testing::coherent_closed_form(dim, beta) + sign * testing::coherent_closed_form(dim, -beta);
  return v / v.norm();
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("initial state") {
  const TruncationScheme trunc;
  const PureState psi = initial_state(trunc);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-16));
  const Observables o = observables(psi);
  CHECK(o.p_e == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(o.p_g == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(o.n_vib == 0.0);
  CHECK(o.n_cav == 0.0);
  CHECK(o.parity == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("numeric evolution at t = 0 returns the initial state") {
  const TruncationScheme trunc;
  const PureState psi0 = initial_state(trunc);
  const SpectralEvolver ev(build_h_full(SystemParams{}, trunc));
  CHECK(ev.at(psi0, 0.0).amplitudes == psi0.amplitudes);
  const std::vector<double> t0{0.0};
  const auto rec = evolve_numeric(build_h_full(SystemParams{}, trunc), psi0, t0);
  CHECK(rec.norms[0] == doctest::Approx(1.0));
}

TEST_CASE("decoupled evolution only changes phases") {
  const TruncationScheme trunc;
  const PureState psi0 = initial_state(trunc);
  const SpectralEvolver ev(build_h_full(params(0.0, 0.0), trunc));
  for (const double t : {0.3, 1.7, 5.0}) {
    const PureState psi = ev.at(psi0, t);
    const Observables o = observables(psi);
    CHECK(o.p_e == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(o.n_vib < 1e-20);
    // Product state: e amplitude carries e^{-i omega0 t/2}, g amplitude e^{+i omega0 t/2}.
    const cplx e = psi.amplitudes(composite_index(psi.signature, 0, 0, kExcited));
    const cplx g = psi.amplitudes(composite_index(psi.signature, 0, 0, kGround));
    CHECK(std::abs(e - M_SQRT1_2 * std::exp(-kI * 0.1 * t)) < 1e-12);
    CHECK(std::abs(g - M_SQRT1_2 * std::exp(kI * 0.1 * t)) < 1e-12);
  }
}

TEST_CASE("norm is conserved along a full-Hamiltonian trajectory") {
  const TruncationScheme trunc;
  const auto times = uniform_times(2.0 * M_PI, 64);
  const auto rec = evolve_numeric(build_h_full(params(0.5, 0.005), trunc), initial_state(trunc), times);
  REQUIRE(rec.norms.size() == 64);
  for (std::size_t k = 0; k < rec.norms.size(); ++k) {
    CHECK(std::abs(rec.norms[k] - 1.0) <= 1e-8);
    CHECK(std::abs(rec.obs[k].p_e + rec.obs[k].p_g - 1.0) <= 1e-10);
  }
}

TEST_CASE("under-truncated evolution signals a truncation error") {
  const TruncationScheme trunc{3, 8, 1};
  const auto times = uniform_times(2.0 * M_PI, 16);
  try {
    evolve_numeric(build_h_regime(params(1.5, 0.01), trunc), initial_state(trunc), times);
    FAIL("expected a truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation);
  }
}

TEST_CASE("evolution rejects unsorted or negative times") {
  const TruncationScheme trunc{6, 3, 2};
  const Operator h = build_h_full(SystemParams{}, trunc);
  const std::vector<double> unsorted{0.0, 2.0, 1.0};
  const std::vector<double> negative{-1.0};
  CHECK_THROWS_AS(evolve_numeric(h, initial_state(trunc), unsorted), Error);
  CHECK_THROWS_AS(evolve_numeric(h, initial_state(trunc), negative), Error);
}

TEST_CASE("uniform time grid includes both endpoints") {
  const auto t = uniform_times(2.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 2.0);
  CHECK(t[2] == 1.0);
}

TEST_CASE("analytic propagator at t = 0 is the conditional displacement") {
  const TruncationScheme trunc{12, 4, 3};
  const SystemParams p = params(0.5, 0.01);
  const Operator u = analytic_propagator(p, 0.0, trunc);
  const ComplexMatrix d = displacement(12, p.beta(), 3);
  const ComplexMatrix ic = ComplexMatrix::Identity(4, 4);
  const Operator expected = embed(d, ic, projector(kExcited), trunc) + embed(d.adjoint(), ic, projector(kGround), trunc);
  CHECK(max_abs(u.matrix - expected.matrix) < 1e-15);
  const auto n = static_cast<Eigen::Index>(trunc.total_dim());
  CHECK(interior_max_abs(u.matrix - ComplexMatrix::Identity(n, n), trunc) > 0.1);
}

TEST_CASE("analytic propagator without displacement or qubit rotation is free evolution") {
  const TruncationScheme trunc{6, 4, 2};
  SystemParams p = params(0.0, 0.01);
  p.omega0 = 0.0;
  p.omega = 0.7;
  const double t = 1.3;
  const Operator free = embed(number_operator(6), Slot::vibration, trunc) +
                        cplx{0.7} * embed(number_operator(4), Slot::cavity, trunc);
  CHECK(max_abs(analytic_propagator(p, t, trunc).matrix - propagator(free.matrix, t)) < 1e-12);
}

TEST_CASE("analytic propagator applied to the initial state gives the analytic state") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.01);
  for (const double t : {0.5, 1.0, 3.0}) {
    const PureState lhs = apply(analytic_propagator(p, t, trunc), initial_state(trunc));
    CHECK(fidelity(lhs, analytic_state(p, t, trunc)) >= 1.0 - 1e-9);
  }
}

TEST_CASE("analytic state at t = 0") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.01);
  const PureState psi = analytic_state(p, 0.0, trunc);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
  const ComplexVector plus = testing::coherent_closed_form(25, p.beta());
  const ComplexVector minus = testing::coherent_closed_form(25, -p.beta());
  CHECK((branch(psi, kExcited) - M_SQRT1_2 * plus).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((branch(psi, kGround) - M_SQRT1_2 * minus).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(observables(psi).n_cav == 0.0);
}

TEST_CASE("analytic state is periodic in the trap period") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.01);
  CHECK(fidelity(analytic_state(p, 2.0 * M_PI, trunc), analytic_state(p, 0.0, trunc)) >= 1.0 - 1e-10);
}

TEST_CASE("pulse V") {
  const ComplexMatrix v = pulse_v();
  CHECK(max_abs(v * v.adjoint() - ComplexMatrix::Identity(2, 2)) < 1e-15);
  const TruncationScheme trunc;
  const PureState out = apply_pulse_v(initial_state(trunc));
  CHECK(std::abs(out.amplitudes(composite_index(out.signature, 0, 0, kExcited)) - cplx(1.0)) < 1e-15);
  CHECK(out.amplitudes(composite_index(out.signature, 0, 0, kGround)) == cplx(0.0));
  PureState bad = initial_state(trunc);
  bad.amplitudes *= 2.0;
  CHECK_THROWS_AS(apply_pulse_v(bad), Error);
}

TEST_CASE("pulse V splits the analytic state into the two cats") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.01);
  const double t = 1.0;
  const PureState out = apply_pulse_v(analytic_state(p, t, trunc));
  CHECK(std::abs(out.norm() - 1.0) <= 1e-14);
  const cplx beta_t = std::exp(-kI * t) * p.beta();
  ComplexVector e = branch(out, kExcited), g = branch(out, kGround);
  CHECK(motional_fidelity(e / e.norm(), oracle_cat(25, beta_t, +1.0)) >= 1.0 - 1e-12);
  CHECK(motional_fidelity(g / g.norm(), oracle_cat(25, beta_t, -1.0)) >= 1.0 - 1e-12);
  // Amplitude level: the g branch is -Phi_- times the common prefactor.
  const cplx prefactor = std::exp(-kI * 0.1 * t) * 0.5;
  const ComplexVector bare_minus = testing::coherent_closed_form(25, beta_t) - testing::coherent_closed_form(25, -beta_t);
  CHECK((g + prefactor * bare_minus).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("collapse onto the excited level") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.01);
  const double t = 1.0;
  const PureState pre = apply_pulse_v(analytic_state(p, t, trunc));
  const auto e = collapse_measure(pre, Level::excited, true);
  REQUIRE(e.possible);
  CHECK(e.probability == doctest::Approx(0.941248451292).epsilon(1e-11));
  CHECK(std::abs(e.probability - 0.5 * (1.0 + std::exp(-0.125))) <= 1e-9);
  const cplx beta_t = std::exp(-kI * t) * p.beta();
  CHECK(motional_fidelity(e.state, oracle_cat(25, beta_t, 1.0)) >= 1.0 - 1e-9);
  CHECK(motional_parity(e.state) == doctest::Approx(1.0).epsilon(1e-15));

  const auto g = collapse_measure(pre, Level::ground, true);
  REQUIRE(g.possible);
  CHECK(std::abs(e.probability + g.probability - 1.0) <= 1e-10);
  CHECK(motional_parity(g.state) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("collapse without cavity projection keeps the cavity slot") {
  const TruncationScheme trunc;
  const PureState pre = apply_pulse_v(analytic_state(params(0.5, 0.01), 1.0, trunc));
  const auto r = collapse_measure(pre, Level::excited, false);
  CHECK_FALSE(r.cavity_projected);
  CHECK(r.state.size() == 25 * 8);
}

TEST_CASE("zero-probability outcome is flagged, not thrown") {
  const TruncationScheme trunc;
  const PureState pre = apply_pulse_v(initial_state(trunc));
  const auto r = collapse_measure(pre, Level::ground, true);
  CHECK_FALSE(r.possible);
  CHECK(r.probability == 0.0);
  CHECK(r.state.size() == 0);
}

TEST_CASE("outcome probabilities are complete for evolved states") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.05);
  const SpectralEvolver full(build_h_full(p, trunc));
  for (const double t : {0.0, 1.0, 4.0}) {
    const PureState pre = apply_pulse_v(full.at(initial_state(trunc), t));
    const OutcomeTable table = outcome_probabilities(pre);
    CHECK(std::abs(table.total() - 1.0) <= 1e-10);
    if (t > 0.0) CHECK(table.probabilities[0][1] + table.probabilities[1][1] > 0.0);
  }
}

TEST_CASE("cat states") {
  const cplx beta{0.0, 0.25};
  const auto vac = cat_state(0.0, Branch::plus, 20);
  CHECK((vac.amplitudes - fock_state(20, 0)).norm() == 0.0);

  const auto plus = cat_state(beta, Branch::plus, 25, NormalizationMode::bare);
  const auto minus = cat_state(beta, Branch::minus, 25, NormalizationMode::bare);
  CHECK(plus.squared_norm() == doctest::Approx(1.0 + std::exp(-0.125)).epsilon(1e-12));
  CHECK(std::abs(plus.squared_norm() - 1.882496902585) <= 1e-9);
  CHECK(std::abs(minus.squared_norm() - 0.117503097415) <= 1e-9);

  const auto proper_plus = cat_state(beta, Branch::plus, 25);
  const auto proper_minus = cat_state(beta, Branch::minus, 25);
  CHECK(std::abs(proper_plus.amplitudes.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(proper_minus.amplitudes.norm() - 1.0) <= 1e-12);
  for (Eigen::Index n = 1; n < 25; n += 2) CHECK(proper_plus.amplitudes(n) == cplx(0.0));
  for (Eigen::Index n = 0; n < 25; n += 2) CHECK(proper_minus.amplitudes(n) == cplx(0.0));
  CHECK(motional_parity(proper_plus.amplitudes) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(motional_parity(proper_minus.amplitudes) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("cat state mean phonon number") {
  const cplx beta{0.0, 0.25};
  const double b2 = std::norm(beta);
  // Brute-force Fock sum over closed-form amplitudes.
  auto brute = [](const ComplexVector& v) {
    double m = 0.0;
    for (Eigen::Index n = 0; n < v.size(); ++n) m += static_cast<double>(n) * std::norm(v(n));
    return m;
  };
  const double oracle_plus = brute(oracle_cat(40, beta, 1.0));
  const double oracle_minus = brute(oracle_cat(40, beta, -1.0));
  CHECK(oracle_plus == doctest::Approx(b2 * std::tanh(b2)).epsilon(1e-12));
  CHECK(oracle_minus == doctest::Approx(b2 / std::tanh(b2)).epsilon(1e-12));
  CHECK(motional_mean_number(cat_state(beta, Branch::plus, 25).amplitudes) ==
        doctest::Approx(oracle_plus).epsilon(1e-12));
  CHECK(motional_mean_number(cat_state(beta, Branch::minus, 25).amplitudes) ==
        doctest::Approx(oracle_minus).epsilon(1e-12));
  CHECK(oracle_plus == doctest::Approx(0.00390117).epsilon(1e-5));
}

TEST_CASE("odd cat at zero amplitude is degenerate") {
  try {
    cat_state(0.0, Branch::minus, 20);
    FAIL("expected a degenerate error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
  }
}

TEST_CASE("validation run at zero coupling") {
  const TruncationScheme trunc;
  const SystemParams p = params(0.5, 0.0);
  const auto times = uniform_times(2.0 * M_PI, 12);

  // Reference propagator T^dag exp(-i H_T t) T against brute force under the full Hamiltonian.
  const FrameEvolver frame(build_h_transformed(p, trunc), build_t(p, trunc));
  const SpectralEvolver full(build_h_full(p, trunc));
  const PureState psi0 = initial_state(trunc);
  for (const double t : times) CHECK(fidelity(frame.at(psi0, t), full.at(psi0, t)) >= 1.0 - 1e-8);

  const auto report = validation_run(p, trunc, times);
  REQUIRE(report.samples.size() == times.size());
  CHECK(std::isinf(report.regime.ratio_drive));
  for (const auto& s : report.samples) {
    CHECK(s.fidelity_regime == doctest::Approx(s.fidelity_full).epsilon(1e-8));
    // Closed form of the analytic-vs-exact overlap at zero coupling.
    const double c = std::cos(0.1 * s.time);
    CHECK(s.fidelity_full == doctest::Approx(std::exp(-0.0625) * c * c).epsilon(1e-9));
  }
  CHECK(report.samples.front().propagator_deviation > 0.0);
}

TEST_CASE("frame propagator block matches the full propagator") {
  const TruncationScheme trunc{8, 4, 2};
  const SystemParams p = params(0.5, 0.01);
  const FrameEvolver frame(build_h_regime(p, trunc), build_t(p, trunc));
  const auto idx = interior_indices(trunc);
  const ComplexMatrix full = frame.propagator(0.9);
  CHECK(max_abs(frame.propagator_block(0.9, idx) - full(idx, idx)) < 1e-13);
  const PureState psi0 = initial_state(trunc);
  CHECK((frame.at(psi0, 0.9).amplitudes - full * psi0.amplitudes).norm() < 1e-12);
}

}  // TEST_SUITE
