// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/catsim.h"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "catsim/dynamics.hpp"
#include "catsim/error.hpp"
#include "catsim/scenario.hpp"
#include "catsim/wigner.hpp"

struct catsim_system {
  catsim::SystemParams params;
  catsim::TruncationScheme trunc;
  std::unique_ptr<catsim::SpectralEvolver> full;
  std::unique_ptr<catsim::FrameEvolver> transformed;
  std::unique_ptr<catsim::FrameEvolver> regime;
};

struct catsim_operator {
  catsim::Operator op;
};

struct catsim_state {
  catsim::PureState psi;
};

namespace {

thread_local std::string g_last_error;

catsim_status status_of(catsim::ErrorCode code) {
  using catsim::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return CATSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return CATSIM_ERR_DIMENSION;
    case ErrorCode::not_hermitian: return CATSIM_ERR_NOT_HERMITIAN;
    case ErrorCode::no_convergence: return CATSIM_ERR_NO_CONVERGENCE;
    case ErrorCode::not_normalized: return CATSIM_ERR_NOT_NORMALIZED;
    case ErrorCode::truncation: return CATSIM_ERR_TRUNCATION;
    case ErrorCode::degenerate: return CATSIM_ERR_DEGENERATE;
    case ErrorCode::config: return CATSIM_ERR_CONFIG;
    case ErrorCode::io: return CATSIM_ERR_IO;
  }
  return CATSIM_ERR_INTERNAL;
}

catsim_status set_error(catsim_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
catsim_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const catsim::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CATSIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CATSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CATSIM_ERR_INTERNAL, "unknown exception");
  }
}

catsim_status null_arg(const char* where) {
  return set_error(CATSIM_ERR_INVALID_ARGUMENT, std::string(where) + ": null argument");
}

catsim::SystemParams to_cpp(const catsim_params& p) { return {p.nu, p.omega, p.omega0, p.g, p.eta}; }
catsim::TruncationScheme to_cpp(const catsim_truncation& t) { return {t.n_vib, t.n_cav, t.guard}; }

catsim::ComplexVector read_complex(const double* data, std::size_t n) {
  catsim::ComplexVector v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = {data[2 * k], data[2 * k + 1]};
  return v;
}

catsim_status write_complex(const catsim::ComplexVector& v, double* out, std::size_t capacity) {
  const auto n = static_cast<std::size_t>(v.size());
  if (capacity < 2 * n) return set_error(CATSIM_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  for (std::size_t k = 0; k < n; ++k) {
    out[2 * k] = v(static_cast<Eigen::Index>(k)).real();
    out[2 * k + 1] = v(static_cast<Eigen::Index>(k)).imag();
  }
  return CATSIM_OK;
}

catsim_status new_state(catsim::PureState psi, catsim_state** out) {
  *out = new catsim_state{std::move(psi)};
  return CATSIM_OK;
}

}  // namespace

extern "C" {

const char* catsim_version(void) { return "1.0.0"; }

const char* catsim_last_error(void) { return g_last_error.c_str(); }

const char* catsim_status_string(catsim_status status) {
  switch (status) {
    case CATSIM_OK: return "ok";
    case CATSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CATSIM_ERR_DIMENSION: return "dimension mismatch";
    case CATSIM_ERR_NOT_HERMITIAN: return "not Hermitian";
    case CATSIM_ERR_NO_CONVERGENCE: return "no convergence";
    case CATSIM_ERR_NOT_NORMALIZED: return "not normalized";
    case CATSIM_ERR_TRUNCATION: return "truncation too small";
    case CATSIM_ERR_DEGENERATE: return "degenerate state";
    case CATSIM_ERR_CONFIG: return "config error";
    case CATSIM_ERR_IO: return "i/o error";
    case CATSIM_ERR_TOLERANCE: return "numerical tolerance violation";
    case CATSIM_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case CATSIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int catsim_exit_code(catsim_status status) {
  switch (status) {
    case CATSIM_OK: return 0;
    case CATSIM_ERR_TRUNCATION:
    case CATSIM_ERR_TOLERANCE:
    case CATSIM_ERR_NOT_NORMALIZED:
    case CATSIM_ERR_NO_CONVERGENCE:
    case CATSIM_ERR_NOT_HERMITIAN:
      return 2;
    default:
      return 1;
  }
}

void catsim_default_params(catsim_params* out) {
  if (!out) return;
  const catsim::SystemParams p;
  *out = {p.nu, p.omega, p.omega0, p.g, p.eta};
}

void catsim_default_truncation(catsim_truncation* out) {
  if (!out) return;
  const catsim::TruncationScheme t;
  *out = {t.n_vib, t.n_cav, t.guard};
}

void catsim_default_thresholds(catsim_thresholds* out) {
  if (!out) return;
  const catsim::RegimeThresholds t;
  *out = {t.ratio_drive, t.eta_ld};
}

catsim_status catsim_system_create(const catsim_params* params, const catsim_truncation* trunc,
                                   catsim_system** out) {
  if (!params || !trunc || !out) return null_arg("catsim_system_create");
  *out = nullptr;
  return guarded([&] {
    auto sys = std::make_unique<catsim_system>();
    sys->params = to_cpp(*params);
    sys->trunc = to_cpp(*trunc);
    sys->params.validate();
    sys->trunc.validate();
    *out = sys.release();
    return CATSIM_OK;
  });
}

void catsim_system_destroy(catsim_system* sys) { delete sys; }

size_t catsim_system_dim(const catsim_system* sys) { return sys ? sys->trunc.total_dim() : 0; }

catsim_status catsim_compute_regime_report(const catsim_params* params, const catsim_thresholds* thresholds,
                                   catsim_regime_report* out) {
  if (!params || !out) return null_arg("catsim_compute_regime_report");
  return guarded([&] {
    catsim::RegimeThresholds th;
    if (thresholds) th = {thresholds->ratio_drive, thresholds->eta_ld};
    const auto r = catsim::regime_report(to_cpp(*params), th);
    *out = {r.ratio_drive, r.ratio_ld, r.regime_ok ? 1 : 0, r.beyond_ld ? 1 : 0};
    return CATSIM_OK;
  });
}

catsim_status catsim_run_transform_check(const catsim_system* sys, catsim_transform_check* out) {
  if (!sys || !out) return null_arg("catsim_run_transform_check");
  return guarded([&] {
    const auto c = catsim::transform_identity_check(sys->params, sys->trunc);
    *out = {c.h_max, c.residual, c.relative, c.conjugated_residual, c.t_unitarity, c.d_unitarity};
    return CATSIM_OK;
  });
}

catsim_status catsim_validation_run(const catsim_system* sys, const double* times, size_t n_times,
                                    catsim_validation_sample* out) {
  if (!sys || (n_times && (!times || !out))) return null_arg("catsim_validation_run");
  return guarded([&] {
    const auto report = catsim::validation_run(sys->params, sys->trunc, std::span(times, n_times));
    for (std::size_t k = 0; k < n_times; ++k) {
      const auto& s = report.samples[k];
      out[k] = {s.time, s.fidelity_regime, s.fidelity_full, s.propagator_deviation};
    }
    return CATSIM_OK;
  });
}

catsim_status catsim_operator_build(const catsim_system* sys, catsim_operator_kind kind, double t,
                                    catsim_operator** out) {
  if (!sys || !out) return null_arg("catsim_operator_build");
  *out = nullptr;
  return guarded([&] {
    catsim::Operator op;
    switch (kind) {
      case CATSIM_OP_H_FULL: op = catsim::build_h_full(sys->params, sys->trunc); break;
      case CATSIM_OP_H_TRANSFORMED: op = catsim::build_h_transformed(sys->params, sys->trunc); break;
      case CATSIM_OP_H_REGIME: op = catsim::build_h_regime(sys->params, sys->trunc); break;
      case CATSIM_OP_TRANSFORM: op = catsim::build_t(sys->params, sys->trunc); break;
      case CATSIM_OP_ANALYTIC_PROPAGATOR:
        op = catsim::analytic_propagator(sys->params, t, sys->trunc);
        break;
      default: return set_error(CATSIM_ERR_INVALID_ARGUMENT, "unknown operator kind");
    }
    *out = new catsim_operator{std::move(op)};
    return CATSIM_OK;
  });
}

void catsim_operator_destroy(catsim_operator* op) { delete op; }

size_t catsim_operator_dim(const catsim_operator* op) {
  return op ? static_cast<size_t>(op->op.matrix.rows()) : 0;
}

catsim_status catsim_operator_entries(const catsim_operator* op, double* out, size_t capacity) {
  if (!op || !out) return null_arg("catsim_operator_entries");
  const auto& m = op->op.matrix;
  const auto n = static_cast<std::size_t>(m.rows());
  if (capacity < 2 * n * n) return set_error(CATSIM_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[k++] = m(i, j).real();
      out[k++] = m(i, j).imag();
    }
  }
  return CATSIM_OK;
}

catsim_status catsim_operator_interior_distance(const catsim_system* sys, const catsim_operator* a,
                                                const catsim_operator* b, double* out) {
  if (!sys || !a || !b || !out) return null_arg("catsim_operator_interior_distance");
  return guarded([&] {
    catsim::require_same(a->op.signature, b->op.signature, "interior_distance");
    *out = catsim::interior_max_abs(a->op.matrix - b->op.matrix, sys->trunc);
    return CATSIM_OK;
  });
}

catsim_status catsim_state_initial(const catsim_system* sys, catsim_state** out) {
  if (!sys || !out) return null_arg("catsim_state_initial");
  *out = nullptr;
  return guarded([&] { return new_state(catsim::initial_state(sys->trunc), out); });
}

catsim_status catsim_state_analytic(const catsim_system* sys, double t, catsim_state** out) {
  if (!sys || !out) return null_arg("catsim_state_analytic");
  *out = nullptr;
  return guarded([&] { return new_state(catsim::analytic_state(sys->params, t, sys->trunc), out); });
}

catsim_status catsim_state_evolve(catsim_system* sys, catsim_evolution how, const catsim_state* psi0,
                                  double t, catsim_state** out) {
  if (!sys || !psi0 || !out) return null_arg("catsim_state_evolve");
  *out = nullptr;
  return guarded([&] {
    switch (how) {
      case CATSIM_EVOLVE_FULL:
        if (!sys->full) {
          sys->full = std::make_unique<catsim::SpectralEvolver>(catsim::build_h_full(sys->params, sys->trunc));
        }
        return new_state(sys->full->at(psi0->psi, t), out);
      case CATSIM_EVOLVE_TRANSFORMED:
        if (!sys->transformed) {
          sys->transformed = std::make_unique<catsim::FrameEvolver>(
              catsim::build_h_transformed(sys->params, sys->trunc), catsim::build_t(sys->params, sys->trunc));
        }
        return new_state(sys->transformed->at(psi0->psi, t), out);
      case CATSIM_EVOLVE_REGIME:
        if (!sys->regime) {
          sys->regime = std::make_unique<catsim::FrameEvolver>(
              catsim::build_h_regime(sys->params, sys->trunc), catsim::build_t(sys->params, sys->trunc));
        }
        return new_state(sys->regime->at(psi0->psi, t), out);
    }
    return set_error(CATSIM_ERR_INVALID_ARGUMENT, "unknown evolution kind");
  });
}

catsim_status catsim_state_apply(const catsim_operator* op, const catsim_state* psi, catsim_state** out) {
  if (!op || !psi || !out) return null_arg("catsim_state_apply");
  *out = nullptr;
  return guarded([&] { return new_state(catsim::apply(op->op, psi->psi), out); });
}

catsim_status catsim_state_pulse_v(const catsim_state* psi, catsim_state** out) {
  if (!psi || !out) return null_arg("catsim_state_pulse_v");
  *out = nullptr;
  return guarded([&] { return new_state(catsim::apply_pulse_v(psi->psi), out); });
}

void catsim_state_destroy(catsim_state* psi) { delete psi; }

size_t catsim_state_dim(const catsim_state* psi) {
  return psi ? static_cast<size_t>(psi->psi.amplitudes.size()) : 0;
}

catsim_status catsim_state_amplitudes(const catsim_state* psi, double* out, size_t capacity) {
  if (!psi || !out) return null_arg("catsim_state_amplitudes");
  return write_complex(psi->psi.amplitudes, out, capacity);
}

catsim_status catsim_state_observables(const catsim_state* psi, catsim_observables* out) {
  if (!psi || !out) return null_arg("catsim_state_observables");
  return guarded([&] {
    const auto o = catsim::observables(psi->psi);
    *out = {o.p_e, o.p_g, o.n_vib, o.n_cav, o.parity};
    return CATSIM_OK;
  });
}

catsim_status catsim_state_fidelity(const catsim_state* a, const catsim_state* b, double* out) {
  if (!a || !b || !out) return null_arg("catsim_state_fidelity");
  return guarded([&] {
    *out = catsim::fidelity(a->psi, b->psi);
    return CATSIM_OK;
  });
}

catsim_status catsim_state_collapse(const catsim_state* psi, catsim_level outcome,
                                    int require_cavity_vacuum, double* probability,
                                    double* amplitudes, size_t capacity, size_t* written) {
  if (!psi || !probability || !written) return null_arg("catsim_state_collapse");
  return guarded([&] {
    const auto level = outcome == CATSIM_EXCITED ? catsim::Level::excited : catsim::Level::ground;
    const auto r = catsim::collapse_measure(psi->psi, level, require_cavity_vacuum != 0);
    *probability = r.probability;
    *written = 0;
    if (!r.possible) return CATSIM_OK;
    if (!amplitudes) return null_arg("catsim_state_collapse");
    const catsim_status s = write_complex(r.state, amplitudes, capacity);
    if (s == CATSIM_OK) *written = static_cast<size_t>(r.state.size());
    return s;
  });
}

catsim_status catsim_cat_state(double beta_re, double beta_im, catsim_branch branch, size_t dim,
                               catsim_norm_mode mode, double* out, size_t capacity) {
  if (!out) return null_arg("catsim_cat_state");
  return guarded([&] {
    const auto cat = catsim::cat_state(
        {beta_re, beta_im}, branch == CATSIM_BRANCH_PLUS ? catsim::Branch::plus : catsim::Branch::minus,
        dim, mode == CATSIM_NORM_BARE ? catsim::NormalizationMode::bare : catsim::NormalizationMode::proper);
    return write_complex(cat.amplitudes, out, capacity);
  });
}

catsim_status catsim_motional_parity(const double* amplitudes, size_t dim, double* out) {
  if (!amplitudes || !out) return null_arg("catsim_motional_parity");
  *out = catsim::motional_parity(read_complex(amplitudes, dim));
  return CATSIM_OK;
}

catsim_status catsim_wigner(const double* amplitudes, size_t dim, size_t guard, const double* alphas,
                            size_t n_points, double* w_out) {
  if (!amplitudes || (n_points && (!alphas || !w_out))) return null_arg("catsim_wigner");
  return guarded([&] {
    std::vector<catsim::cplx> pts(n_points);
    for (std::size_t k = 0; k < n_points; ++k) pts[k] = {alphas[2 * k], alphas[2 * k + 1]};
    const auto w = catsim::wigner_grid(read_complex(amplitudes, dim), pts, guard);
    std::copy(w.begin(), w.end(), w_out);
    return CATSIM_OK;
  });
}

catsim_status catsim_run_config(const char* config_path, const char* output_dir) {
  if (!config_path) return null_arg("catsim_run_config");
  return guarded([&] {
    auto cfg = catsim::load_config(config_path);
    if (output_dir && *output_dir) cfg.output_dir = output_dir;
    unsigned threads = 1;
    if (const char* env = std::getenv("CATSIM_THREADS"); env && *env) {
      char* end = nullptr;
      const long n = std::strtol(env, &end, 10);
      if (*end != '\0' || n < 1) {
        return set_error(CATSIM_ERR_CONFIG, "CATSIM_THREADS must be a positive integer");
      }
      threads = static_cast<unsigned>(n);
    }
    const auto result = catsim::run_scenario(cfg, threads);
    switch (result.exit_code) {
      case 0: return CATSIM_OK;
      case 2: return set_error(CATSIM_ERR_TOLERANCE, result.message);
      default: return set_error(CATSIM_ERR_CONFIG, result.message);
    }
  });
}

}  // extern "C"
