// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <thread>
#include <utility>

#include "catsim/error.hpp"
#include "catsim/tolerances.hpp"

namespace catsim {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;
using Row = std::vector<double>;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(Row row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_number(row[i]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

struct Point {
  SystemParams params;
  std::string suffix;  // "" without a sweep, else "_field=value..."
};

struct PointResult {
  Entries entries;
  std::vector<std::filesystem::path> files;
  int exit_code = 0;
  std::string message;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::filesystem::path>& files) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) fail(ErrorCode::io, "write failed for '" + path.string() + "'");
  files.push_back(path);
}

std::vector<Point> expand_sweep(const ScenarioConfig& cfg) {
  std::vector<Point> points{{cfg.params, ""}};
  for (const auto& axis : cfg.sweep) {
    std::vector<Point> next;
    for (const auto& base : points) {
      for (const double v : axis.values) {
        Point p = base;
        set_param(p.params, axis.field, v);
        p.suffix += "_" + axis.field + "=" + format_number(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

void add_regime(Entries& e, const RegimeReport& r) {
  e.emplace_back("regime.ratio_drive", format_number(r.ratio_drive));
  e.emplace_back("regime.ratio_ld", format_number(r.ratio_ld));
  e.emplace_back("regime.regime_ok", yes_no(r.regime_ok));
  e.emplace_back("regime.beyond_ld", yes_no(r.beyond_ld));
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::min_element(v.begin(), v.end());
}

bool wants(BranchRequest req, Branch b) {
  return req == BranchRequest::both || (req == BranchRequest::plus) == (b == Branch::plus);
}

void run_validate_transform(const ScenarioConfig& cfg, const Point& pt, PointResult& out) {
  const auto& p = pt.params;
  const TransformCheck tc = transform_identity_check(p, cfg.trunc);
  const auto times = uniform_times(cfg.t_max, cfg.n_steps);
  const ValidationReport vr = validation_run(p, cfg.trunc, times, cfg.thresholds);

  const SpectralEvolver full(build_h_full(p, cfg.trunc));
  const auto idx = interior_indices(cfg.trunc);
  const auto m = static_cast<Eigen::Index>(idx.size());
  double prop_unitarity = 0.0;
  for (const double t : times) {
    const ComplexMatrix cols = full.propagator(t)(Eigen::all, idx);
    prop_unitarity = std::max(prop_unitarity, max_abs(cols.adjoint() * cols - ComplexMatrix::Identity(m, m)));
  }

  Table transform({"h_max", "residual", "relative_residual", "conjugated_residual", "t_unitarity",
                   "d_unitarity", "propagator_unitarity"});
  transform.add({tc.h_max, tc.residual, tc.relative, tc.conjugated_residual, tc.t_unitarity,
                 tc.d_unitarity, prop_unitarity});
  write_file(cfg.output_dir / ("transform" + pt.suffix + ".csv"), transform.str(), out.files);

  Table validation({"time", "fidelity_regime", "fidelity_full", "propagator_deviation"});
  std::vector<double> fa, fb;
  for (const auto& s : vr.samples) {
    validation.add({s.time, s.fidelity_regime, s.fidelity_full, s.propagator_deviation});
    fa.push_back(s.fidelity_regime);
    fb.push_back(s.fidelity_full);
  }
  write_file(cfg.output_dir / ("validation" + pt.suffix + ".csv"), validation.str(), out.files);

  const bool within = tc.relative <= kTol.transform_identity;
  out.entries = {
      {"transform.h_max", format_number(tc.h_max)},
      {"transform.residual", format_number(tc.residual)},
      {"transform.relative_residual", format_number(tc.relative)},
      {"transform.conjugated_residual", format_number(tc.conjugated_residual)},
      {"transform.t_unitarity", format_number(tc.t_unitarity)},
      {"transform.d_unitarity", format_number(tc.d_unitarity)},
      {"transform.propagator_unitarity", format_number(prop_unitarity)},
      {"transform.tolerance", format_number(kTol.transform_identity)},
      {"transform.within_tolerance", yes_no(within)},
      {"validation.min_fidelity_regime", format_number(min_of(fa))},
      {"validation.min_fidelity_full", format_number(min_of(fb))},
      {"validation.deviation_t0", format_number(vr.samples.empty() ? kNaN : vr.samples.front().propagator_deviation)},
  };
  add_regime(out.entries, vr.regime);
  if (!within) {
    out.exit_code = 2;
    out.message = "transform identity residual " + format_number(tc.relative) +
                  " exceeds tolerance " + format_number(kTol.transform_identity);
  }
}

void run_trajectory(const ScenarioConfig& cfg, const Point& pt, bool regime_frame, PointResult& out) {
  const auto& p = pt.params;
  const auto times = uniform_times(cfg.t_max, cfg.n_steps);
  const PureState psi0 = initial_state(cfg.trunc);
  const FrameEvolver regime(build_h_regime(p, cfg.trunc), build_t(p, cfg.trunc));
  const SpectralEvolver full(build_h_full(p, cfg.trunc));
  const StateAt reference = [&](double t) { return analytic_state(p, t, cfg.trunc); };
  const StateAt regime_at = [&](double t) { return regime.at(psi0, t); };
  const StateAt full_at = [&](double t) { return full.at(psi0, t); };

  const auto rec_regime = record_trajectory(regime_at, times, reference);
  const auto rec_full = record_trajectory(full_at, times, reference);
  const auto& rec = regime_frame ? rec_regime : rec_full;

  Table table({"time", "norm", "fidelity_regime", "fidelity_full", "p_e", "p_g", "n_vib_mean",
               "n_cav_mean", "parity"});
  double drift = 0.0;
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    const auto& o = rec.obs[k];
    table.add({rec.times[k], rec.norms[k], rec_regime.fidelity[k], rec_full.fidelity[k], o.p_e, o.p_g,
               o.n_vib, o.n_cav, o.parity});
    drift = std::max(drift, std::abs(rec.norms[k] - 1.0));
  }
  write_file(cfg.output_dir / ("trajectory" + pt.suffix + ".csv"), table.str(), out.files);

  out.entries = {
      {"trajectory.evolution", regime_frame ? "regime" : "full"},
      {"trajectory.samples", std::to_string(rec.times.size())},
      {"trajectory.max_norm_drift", format_number(drift)},
      {"trajectory.norm_tolerance", format_number(kTol.norm_drift)},
      {"trajectory.max_edge_population",
       format_number(*std::max_element(rec.edge_population.begin(), rec.edge_population.end()))},
      {"trajectory.min_fidelity_regime", format_number(min_of(rec_regime.fidelity))},
      {"trajectory.min_fidelity_full", format_number(min_of(rec_full.fidelity))},
  };
  add_regime(out.entries, regime_report(p, cfg.thresholds));
}

struct CollapseRow {
  double prob = 0.0;
  double fid = kNaN;
  double parity = kNaN;
};

CollapseRow collapse_row(const PureState& pre, Level level, const CatState* target) {
  CollapseRow row;
  const CollapseResult c = collapse_measure(pre, level, true);
  row.prob = c.probability;
  if (c.possible) {
    row.parity = motional_parity(c.state);
    if (target) row.fid = motional_fidelity(c.state, target->amplitudes);
  }
  return row;
}

void run_cat_protocol(const ScenarioConfig& cfg, const Point& pt, PointResult& out) {
  const auto& p = pt.params;
  const auto times = uniform_times(cfg.t_max, cfg.n_steps);
  const PureState psi0 = initial_state(cfg.trunc);
  const SpectralEvolver full(build_h_full(p, cfg.trunc));
  const bool plus = wants(cfg.branch, Branch::plus);
  const bool minus = wants(cfg.branch, Branch::minus);

  std::vector<std::string> header{"time"};
  if (plus) header.insert(header.end(), {"prob_e", "fidelity_plus", "parity_e"});
  if (minus) header.insert(header.end(), {"prob_g", "fidelity_minus", "parity_g"});
  if (plus) header.insert(header.end(), {"prob_e_full", "fidelity_plus_full"});
  if (minus) header.insert(header.end(), {"prob_g_full", "fidelity_minus_full"});
  Table table(header);

  const double closed_form = 0.5 * (1.0 + std::exp(-2.0 * std::norm(p.beta())));
  double max_prob_dev = 0.0, min_even = 1.0, max_odd = -1.0, min_fid_plus = 1.0, min_fid_minus = 1.0;
  for (const double t : times) {
    const cplx beta_t = std::exp(-kI * p.nu * t) * p.beta();
    const PureState pre = apply_pulse_v(analytic_state(p, t, cfg.trunc));
    const PureState pre_full = apply_pulse_v(full.at(psi0, t));
    std::optional<CollapseRow> plus_a, plus_f, minus_a, minus_f;
    if (plus) {
      const CatState target = cat_state(beta_t, Branch::plus, cfg.trunc.n_vib,
                                        NormalizationMode::proper, cfg.trunc.guard);
      plus_a = collapse_row(pre, Level::excited, &target);
      plus_f = collapse_row(pre_full, Level::excited, &target);
      max_prob_dev = std::max(max_prob_dev, std::abs(plus_a->prob - closed_form));
      min_even = std::min(min_even, plus_a->parity);
      min_fid_plus = std::min(min_fid_plus, plus_a->fid);
    }
    if (minus) {
      const CatState target = cat_state(beta_t, Branch::minus, cfg.trunc.n_vib,
                                        NormalizationMode::proper, cfg.trunc.guard);
      minus_a = collapse_row(pre, Level::ground, &target);
      minus_f = collapse_row(pre_full, Level::ground, &target);
      max_odd = std::max(max_odd, minus_a->parity);
      min_fid_minus = std::min(min_fid_minus, minus_a->fid);
    }
    Row row{t};
    if (plus_a) row.insert(row.end(), {plus_a->prob, plus_a->fid, plus_a->parity});
    if (minus_a) row.insert(row.end(), {minus_a->prob, minus_a->fid, minus_a->parity});
    if (plus_f) row.insert(row.end(), {plus_f->prob, plus_f->fid});
    if (minus_f) row.insert(row.end(), {minus_f->prob, minus_f->fid});
    table.add(std::move(row));
  }
  write_file(cfg.output_dir / ("cat_protocol" + pt.suffix + ".csv"), table.str(), out.files);

  out.entries.emplace_back("cat.prob_e_closed_form", format_number(closed_form));
  if (plus) {
    out.entries.emplace_back("cat.max_prob_e_deviation", format_number(max_prob_dev));
    out.entries.emplace_back("cat.min_parity_e", format_number(min_even));
    out.entries.emplace_back("cat.min_fidelity_plus", format_number(min_fid_plus));
  }
  if (minus) {
    out.entries.emplace_back("cat.max_parity_g", format_number(max_odd));
    out.entries.emplace_back("cat.min_fidelity_minus", format_number(min_fid_minus));
  }
  add_regime(out.entries, regime_report(p, cfg.thresholds));
}

void run_wigner(const ScenarioConfig& cfg, const Point& pt, PointResult& out) {
  const auto& p = pt.params;
  const PhaseGrid grid = cfg.wigner.value_or(PhaseGrid{});
  const auto alphas = grid.alphas();
  const PureState pre = apply_pulse_v(analytic_state(p, cfg.t_max, cfg.trunc));
  for (const Branch b : {Branch::plus, Branch::minus}) {
    if (!wants(cfg.branch, b)) continue;
    const bool is_plus = b == Branch::plus;
    const CollapseResult c = collapse_measure(pre, is_plus ? Level::excited : Level::ground, true);
    if (!c.possible) fail(ErrorCode::degenerate, "wigner: collapse outcome has zero probability");
    const auto w = wigner_grid(c.state, alphas, cfg.trunc.guard);
    Table table({"alpha_re", "alpha_im", "w"});
    double integral = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      table.add({alphas[k].real(), alphas[k].imag(), w[k]});
      integral += w[k] * grid.cell_area();
    }
    const std::string name = is_plus ? "plus" : "minus";
    write_file(cfg.output_dir / ("wigner_" + name + pt.suffix + ".csv"), table.str(), out.files);
    out.entries.emplace_back("wigner." + name + ".integral", format_number(integral));
    out.entries.emplace_back("wigner." + name + ".collapse_probability", format_number(c.probability));
    out.entries.emplace_back("wigner." + name + ".parity", format_number(motional_parity(c.state)));
  }
  out.entries.emplace_back("wigner.time", format_number(cfg.t_max));
  add_regime(out.entries, regime_report(p, cfg.thresholds));
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::truncation:
    case ErrorCode::not_normalized:
    case ErrorCode::no_convergence:
    case ErrorCode::not_hermitian:
      return 2;
    default:
      return 1;
  }
}

PointResult run_point(const ScenarioConfig& cfg, const Point& pt) {
  PointResult out;
  try {
    switch (cfg.scenario) {
      case Scenario::validate_transform: run_validate_transform(cfg, pt, out); break;
      case Scenario::evolve_regime: run_trajectory(cfg, pt, true, out); break;
      case Scenario::evolve_full: run_trajectory(cfg, pt, false, out); break;
      case Scenario::cat_protocol: run_cat_protocol(cfg, pt, out); break;
      case Scenario::wigner: run_wigner(cfg, pt, out); break;
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.message = e.what();
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

RunResult run_scenario(const ScenarioConfig& cfg, unsigned threads) {
  RunResult result;
  try {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
  } catch (const Error& e) {
    return {1, e.what(), {}};
  } catch (const std::filesystem::filesystem_error& e) {
    return {1, e.what(), {}};
  }

  const auto points = expand_sweep(cfg);
  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) results[i] = run_point(cfg, points[i]);
  };
  const unsigned n_workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(points.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_workers; ++k) pool.emplace_back(worker);
  }

  std::string summary = "scenario = " + std::string(to_string(cfg.scenario)) + "\n";
  summary += "points = " + std::to_string(points.size()) + "\n";
  summary += "trunc.n_vib = " + std::to_string(cfg.trunc.n_vib) + "\n";
  summary += "trunc.n_cav = " + std::to_string(cfg.trunc.n_cav) + "\n";
  summary += "trunc.guard = " + std::to_string(cfg.trunc.guard) + "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = results[i];
    const std::string prefix = points[i].suffix.empty() ? "" : "point" + points[i].suffix + ".";
    const auto& p = points[i].params;
    for (const auto& [k, v] : Entries{{"params.nu", format_number(p.nu)},
                                      {"params.omega", format_number(p.omega)},
                                      {"params.omega0", format_number(p.omega0)},
                                      {"params.g", format_number(p.g)},
                                      {"params.eta", format_number(p.eta)}}) {
      summary += prefix + k + " = " + v + "\n";
    }
    for (const auto& [k, v] : r.entries) summary += prefix + k + " = " + v + "\n";
    summary += prefix + "status = " + (r.exit_code == 0 ? "ok" : r.exit_code == 2 ? "tolerance_violation" : "error") + "\n";
    if (!r.message.empty()) summary += prefix + "message = " + r.message + "\n";
    result.files.insert(result.files.end(), r.files.begin(), r.files.end());
    if (r.exit_code > result.exit_code) {
      result.exit_code = r.exit_code;
      result.message = r.message;
    }
  }
  summary += "exit_code = " + std::to_string(result.exit_code) + "\n";
  try {
    write_file(cfg.output_dir / "summary.txt", summary, result.files);
  } catch (const Error& e) {
    return {1, e.what(), result.files};
  }
  return result;
}

}  // namespace catsim
