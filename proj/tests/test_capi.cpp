// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through catsim.h only.
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "catsim/catsim.h"
#include "doctest.h"

namespace {

struct System {
  catsim_system* sys = nullptr;
  explicit System(double eta = 0.5, double g = 0.01, catsim_truncation trunc = {25, 8, 5}) {
    catsim_params p;
    catsim_default_params(&p);
    p.eta = eta;
    p.g = g;
    REQUIRE(catsim_system_create(&p, &trunc, &sys) == CATSIM_OK);
  }
  ~System() { catsim_system_destroy(sys); }
};

struct State {
  catsim_state* s = nullptr;
  ~State() { catsim_state_destroy(s); }
};

struct Op {
  catsim_operator* op = nullptr;
  ~Op() { catsim_operator_destroy(op); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(catsim_version()).size() > 0);
  CHECK(std::string(catsim_status_string(CATSIM_OK)) == "ok");
  CHECK(std::string(catsim_status_string(CATSIM_ERR_TRUNCATION)).size() > 0);
  CHECK(catsim_exit_code(CATSIM_OK) == 0);
  CHECK(catsim_exit_code(CATSIM_ERR_CONFIG) == 1);
  CHECK(catsim_exit_code(CATSIM_ERR_DEGENERATE) == 1);
  CHECK(catsim_exit_code(CATSIM_ERR_TRUNCATION) == 2);
  CHECK(catsim_exit_code(CATSIM_ERR_TOLERANCE) == 2);
}

TEST_CASE("defaults") {
  catsim_params p;
  catsim_default_params(&p);
  CHECK(p.nu == 1.0);
  CHECK(p.omega == 1.0);
  CHECK(p.omega0 == 0.2);
  catsim_truncation t;
  catsim_default_truncation(&t);
  CHECK(t.n_vib == 25);
  CHECK(t.n_cav == 8);
  CHECK(t.guard == 5);
  catsim_thresholds th;
  catsim_default_thresholds(&th);
  CHECK(th.ratio_drive == 50.0);
  CHECK(th.eta_ld == 0.3);
}

TEST_CASE("invalid arguments are reported with a message") {
  catsim_params p;
  catsim_default_params(&p);
  p.nu = -1.0;
  catsim_truncation t{25, 8, 5};
  catsim_system* sys = nullptr;
  CHECK(catsim_system_create(&p, &t, &sys) == CATSIM_ERR_INVALID_ARGUMENT);
  CHECK(sys == nullptr);
  CHECK(std::string(catsim_last_error()).find("nu") != std::string::npos);
  CHECK(catsim_system_create(nullptr, &t, &sys) == CATSIM_ERR_INVALID_ARGUMENT);
  catsim_system_destroy(nullptr);
  catsim_state_destroy(nullptr);
  catsim_operator_destroy(nullptr);
}

TEST_CASE("regime report") {
  catsim_params p;
  catsim_default_params(&p);
  p.g = 0.005;
  catsim_regime_report r;
  REQUIRE(catsim_compute_regime_report(&p, nullptr, &r) == CATSIM_OK);
  CHECK(r.ratio_drive == doctest::Approx(100.0));
  CHECK(r.regime_ok == 1);
  p.g = 0.0;
  REQUIRE(catsim_compute_regime_report(&p, nullptr, &r) == CATSIM_OK);
  CHECK(std::isinf(r.ratio_drive));
}

TEST_CASE("operators and transform check") {
  System s(0.5, 0.0);
  CHECK(catsim_system_dim(s.sys) == 400);
  catsim_transform_check c;
  REQUIRE(catsim_run_transform_check(s.sys, &c) == CATSIM_OK);
  CHECK(c.relative <= 1e-6);
  CHECK(c.t_unitarity <= 1e-8);

  Op h, ht;
  REQUIRE(catsim_operator_build(s.sys, CATSIM_OP_H_FULL, 0.0, &h.op) == CATSIM_OK);
  REQUIRE(catsim_operator_build(s.sys, CATSIM_OP_H_REGIME, 0.0, &ht.op) == CATSIM_OK);
  CHECK(catsim_operator_dim(h.op) == 400);
  std::vector<double> buf(2 * 400 * 400);
  REQUIRE(catsim_operator_entries(h.op, buf.data(), buf.size()) == CATSIM_OK);
  CHECK(buf[0] == doctest::Approx(0.1));  // <0,0,e|H|0,0,e>
  CHECK(catsim_operator_entries(h.op, buf.data(), 10) == CATSIM_ERR_BUFFER_TOO_SMALL);
  double dist = 0.0;
  REQUIRE(catsim_operator_interior_distance(s.sys, h.op, ht.op, &dist) == CATSIM_OK);
  CHECK(dist > 0.0);
}

TEST_CASE("analytic propagator reproduces the analytic state") {
  System s;
  Op u;
  State psi0, lhs, rhs;
  REQUIRE(catsim_operator_build(s.sys, CATSIM_OP_ANALYTIC_PROPAGATOR, 1.0, &u.op) == CATSIM_OK);
  REQUIRE(catsim_state_initial(s.sys, &psi0.s) == CATSIM_OK);
  REQUIRE(catsim_state_apply(u.op, psi0.s, &lhs.s) == CATSIM_OK);
  REQUIRE(catsim_state_analytic(s.sys, 1.0, &rhs.s) == CATSIM_OK);
  double f = 0.0;
  REQUIRE(catsim_state_fidelity(lhs.s, rhs.s, &f) == CATSIM_OK);
  CHECK(f >= 1.0 - 1e-9);
}

TEST_CASE("evolution, pulse and collapse") {
  System s(0.5, 0.0);
  State psi0, full, frame, pre;
  REQUIRE(catsim_state_initial(s.sys, &psi0.s) == CATSIM_OK);
  catsim_observables o;
  REQUIRE(catsim_state_observables(psi0.s, &o) == CATSIM_OK);
  CHECK(o.p_e == doctest::Approx(0.5));
  CHECK(o.parity == doctest::Approx(1.0));

  REQUIRE(catsim_state_evolve(s.sys, CATSIM_EVOLVE_FULL, psi0.s, 2.0, &full.s) == CATSIM_OK);
  REQUIRE(catsim_state_evolve(s.sys, CATSIM_EVOLVE_TRANSFORMED, psi0.s, 2.0, &frame.s) == CATSIM_OK);
  double f = 0.0;
  REQUIRE(catsim_state_fidelity(full.s, frame.s, &f) == CATSIM_OK);
  CHECK(f >= 1.0 - 1e-8);

  State analytic;
  REQUIRE(catsim_state_analytic(s.sys, 1.0, &analytic.s) == CATSIM_OK);
  REQUIRE(catsim_state_pulse_v(analytic.s, &pre.s) == CATSIM_OK);
  double prob = 0.0;
  std::vector<double> amps(2 * 25);
  size_t written = 0;
  REQUIRE(catsim_state_collapse(pre.s, CATSIM_EXCITED, 1, &prob, amps.data(), amps.size(), &written) == CATSIM_OK);
  CHECK(written == 25);
  CHECK(std::abs(prob - 0.5 * (1.0 + std::exp(-0.125))) <= 1e-9);
  double parity = 0.0;
  REQUIRE(catsim_motional_parity(amps.data(), 25, &parity) == CATSIM_OK);
  CHECK(parity == doctest::Approx(1.0).epsilon(1e-12));

  // |e> after V on the initial state: ground outcome is impossible.
  State pulsed;
  REQUIRE(catsim_state_pulse_v(psi0.s, &pulsed.s) == CATSIM_OK);
  REQUIRE(catsim_state_collapse(pulsed.s, CATSIM_GROUND, 1, &prob, amps.data(), amps.size(), &written) == CATSIM_OK);
  CHECK(written == 0);
  CHECK(prob == 0.0);
}

TEST_CASE("state amplitudes buffer") {
  System s(0.5, 0.01, {6, 3, 2});
  State psi;
  REQUIRE(catsim_state_initial(s.sys, &psi.s) == CATSIM_OK);
  CHECK(catsim_state_dim(psi.s) == 36);
  std::vector<double> buf(72);
  REQUIRE(catsim_state_amplitudes(psi.s, buf.data(), buf.size()) == CATSIM_OK);
  CHECK(buf[0] == doctest::Approx(M_SQRT1_2));
  CHECK(buf[2] == doctest::Approx(M_SQRT1_2));
  CHECK(catsim_state_amplitudes(psi.s, buf.data(), 3) == CATSIM_ERR_BUFFER_TOO_SMALL);
}

TEST_CASE("validation run through the C API") {
  System s(0.5, 0.0, {14, 4, 3});
  const double times[] = {0.0, 1.0, 2.0};
  catsim_validation_sample out[3];
  REQUIRE(catsim_validation_run(s.sys, times, 3, out) == CATSIM_OK);
  CHECK(out[0].propagator_deviation > 0.0);
  CHECK(out[1].fidelity_full == doctest::Approx(std::exp(-0.0625) * std::pow(std::cos(0.1), 2)).epsilon(1e-9));
}

TEST_CASE("cat states and Wigner values") {
  std::vector<double> buf(2 * 25);
  REQUIRE(catsim_cat_state(0.0, 0.25, CATSIM_BRANCH_PLUS, 25, CATSIM_NORM_BARE, buf.data(), buf.size()) == CATSIM_OK);
  double norm2 = 0.0;
  for (double x : buf) norm2 += x * x;
  CHECK(std::abs(norm2 - (1.0 + std::exp(-0.125))) <= 1e-9);
  CHECK(catsim_cat_state(0.0, 0.0, CATSIM_BRANCH_MINUS, 25, CATSIM_NORM_PROPER, buf.data(), buf.size()) ==
        CATSIM_ERR_DEGENERATE);
  CHECK(catsim_cat_state(0.0, 0.25, CATSIM_BRANCH_PLUS, 25, CATSIM_NORM_PROPER, buf.data(), 4) ==
        CATSIM_ERR_BUFFER_TOO_SMALL);

  std::vector<double> vac(2 * 20, 0.0);
  vac[0] = 1.0;
  const double alphas[] = {0.0, 0.0, 1.0, 0.0};
  double w[2];
  REQUIRE(catsim_wigner(vac.data(), 20, 5, alphas, 2, w) == CATSIM_OK);
  CHECK(w[0] == doctest::Approx(2.0 / M_PI));
  CHECK(w[1] == doctest::Approx(2.0 / M_PI * std::exp(-2.0)));
  const double far[] = {4.0, 0.0};
  CHECK(catsim_wigner(vac.data(), 20, 5, far, 1, w) == CATSIM_ERR_TRUNCATION);
}

TEST_CASE("running a config through the C API") {
  const auto dir = std::filesystem::temp_directory_path() / "catsim_capi_run";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "scenario = evolve-full\ntrunc.n_vib = 10\ntrunc.n_cav = 4\ntrunc.guard = 2\n"
                        "time.n_steps = 3\n";
  CHECK(catsim_run_config(cfg.string().c_str(), (dir / "out").string().c_str()) == CATSIM_OK);
  CHECK(std::filesystem::exists(dir / "out" / "trajectory.csv"));
  CHECK(catsim_run_config((dir / "missing.cfg").string().c_str(), nullptr) == CATSIM_ERR_CONFIG);
}
