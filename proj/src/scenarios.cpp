#include "ssh/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "ssh/constants.hpp"

namespace ssh {

namespace {

double list_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

void write_num(std::ofstream& out, double v, bool first = false) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (!first) out << ",";
  out << buf;
}

}  // namespace

ScalarStat scalar_stat(const std::vector<double>& samples) {
  ScalarStat s;
  s.mean = list_mean(samples);
  if (samples.size() > 1) {
    double var = 0.0;
    for (double x : samples) var += (x - s.mean) * (x - s.mean);
    s.stderror = std::sqrt(var / (samples.size() * (samples.size() - 1.0)));
  }
  return s;
}

EnsembleResult run_ensemble(const ModelContext& ctx, const PropagatorConfig& prop_cfg,
                            const RealizationConfig& run_cfg, const ModelContext* ctx_off) {
  EnsembleResult result;
  result.realizations.resize(run_cfg.n_realizations);
  std::vector<std::string> failures(run_cfg.n_realizations);
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m < run_cfg.n_realizations; ++m) {
    try {
      result.realizations[m] = run_realization(ctx, prop_cfg, run_cfg, m, ctx_off);
    } catch (const std::exception& e) {
      failures[m] = e.what();
    }
  }
  for (const auto& f : failures)
    if (!f.empty()) throw std::runtime_error("run_ensemble: realization failed: " + f);
  double edge = 0.0;
  for (const auto& r : result.realizations)
    edge = std::max(edge, r.edge_density_ratio);
  if (edge > 1e-4)
    std::fprintf(stderr,
                 "warning: final density at the box edge is %.2e of the maximum; "
                 "widen the grid (r_min/r_max)\n",
                 edge);
  result.averaged = ensemble_average(result.realizations);
  return result;
}

std::vector<double> window_mean_samples(const std::vector<ObservableSeries>& realizations,
                                        double t_from, double t_to,
                                        std::vector<double> ObservableSeries::* member) {
  std::vector<double> out;
  for (const auto& r : realizations) {
    double s = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      if (r.times_au[i] >= t_from && r.times_au[i] <= t_to) {
        s += (r.*member)[i];
        ++cnt;
      }
    }
    out.push_back(cnt > 0 ? s / cnt : 0.0);
  }
  return out;
}

std::vector<double> window_flux_samples(const std::vector<ObservableSeries>& realizations,
                                        double t_from) {
  std::vector<double> out;
  for (const auto& r : realizations) {
    double s = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      if (r.times_au[i] >= t_from) {
        s += 0.5 * (r.j_left[i] - r.j_right[i]);
        ++cnt;
      }
    }
    out.push_back(cnt > 0 ? s / cnt : 0.0);
  }
  return out;
}

namespace {

// Per-realization Clausius rates over a window, given which side is hot.
std::vector<double> entropy_samples(const std::vector<ObservableSeries>& realizations,
                                    double t_from, double t_to, double t_left_k,
                                    double t_right_k) {
  const bool left_hot = t_left_k >= t_right_k;
  auto j_left = window_mean_samples(realizations, t_from, t_to, &ObservableSeries::j_left);
  auto j_right =
      window_mean_samples(realizations, t_from, t_to, &ObservableSeries::j_right);
  std::vector<double> out;
  for (size_t m = 0; m < realizations.size(); ++m) {
    const double jh = left_hot ? j_left[m] : j_right[m];
    const double jc = left_hot ? j_right[m] : j_left[m];
    out.push_back(entropy_production_rate(jh, jc, left_hot ? t_left_k : t_right_k,
                                          left_hot ? t_right_k : t_left_k));
  }
  return out;
}

double default_steady_fallback(const ObservableSeries& averaged) {
  // Steady state not detected: fall back to the second half of the run so a
  // flagged row still carries numbers.
  return averaged.times_au.empty() ? 0.0 : 0.5 * averaged.times_au.back();
}

}  // namespace

TransportReport run_transport(const ExperimentConfig& cfg) {
  if (cfg.drive_enabled)
    throw std::invalid_argument("run_transport: transport runs take no drive");
  if (cfg.sweep_temperatures_left.empty())
    throw std::invalid_argument("run_transport: empty temperature sweep");

  TransportReport report;
  for (double t_left : cfg.sweep_temperatures_left) {
    ModelContext ctx = cfg.model(t_left, cfg.temperature_right, cfg.omega_left,
                                 cfg.omega_right, cfg.window_Gamma, false, 0.0, {});
    EnsembleResult ens = run_ensemble(ctx, cfg.propagator, cfg.run);

    TransportRow row;
    row.t_left = t_left;
    row.t_right = cfg.temperature_right;
    row.t_steady = detect_steady_state(ens.averaged, cfg.steady);
    const double t_from = row.t_steady.value_or(default_steady_fallback(ens.averaged));
    row.flux_per_realization = window_flux_samples(ens.realizations, t_from);
    row.flux = scalar_stat(row.flux_per_realization);
    row.entropy_per_realization =
        entropy_samples(ens.realizations, t_from, ens.averaged.times_au.back(), t_left,
                        cfg.temperature_right);
    row.entropy_rate = scalar_stat(row.entropy_per_realization);
    report.rows.push_back(std::move(row));
    report.averaged_series.push_back(std::move(ens.averaged));
  }
  return report;
}

RectifierReport run_rectifier_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep_omega_ratios.empty())
    throw std::invalid_argument("run_rectifier_sweep: empty ratio sweep");
  const double t_hot = std::max(cfg.temperature_left, cfg.temperature_right);
  const double t_cold = std::min(cfg.temperature_left, cfg.temperature_right);

  RectifierReport report;
  for (double ratio : cfg.sweep_omega_ratios) {
    const double omega_l = cfg.omega_right * ratio;
    const double omega_r = cfg.omega_right;

    auto run_one = [&](double tl, double tr, bool hot_left) {
      ModelContext ctx =
          cfg.model(tl, tr, omega_l, omega_r, cfg.window_Gamma, false, 0.0, {});
      EnsembleResult ens = run_ensemble(ctx, cfg.propagator, cfg.run);
      auto t_steady = detect_steady_state(ens.averaged, cfg.steady);
      const double t_from = t_steady.value_or(default_steady_fallback(ens.averaged));
      std::vector<double> flux = window_flux_samples(ens.realizations, t_from);
      // Hot-to-cold positive orientation.
      if (!hot_left)
        for (double& f : flux) f = -f;
      return std::pair{scalar_stat(flux), t_steady.has_value()};
    };

    RectifierRow row;
    row.omega_ratio = ratio;
    auto [fwd, fwd_ok] = run_one(t_hot, t_cold, true);
    auto [rev, rev_ok] = run_one(t_cold, t_hot, false);
    row.j_forward = fwd;
    row.j_swapped = rev;
    row.both_steady = fwd_ok && rev_ok;
    if (rev.mean != 0.0) {
      row.ratio = rectification_ratio(fwd.mean, rev.mean);
      const double rel_a = fwd.mean != 0.0 ? fwd.stderror / std::fabs(fwd.mean) : 0.0;
      const double rel_b = rev.stderror / std::fabs(rev.mean);
      row.ratio_err = std::fabs(row.ratio) * std::sqrt(rel_a * rel_a + rel_b * rel_b);
      row.product = row.ratio * ratio;
    }
    report.rows.push_back(row);
  }
  return report;
}

PumpReport run_pump_sweep(const ExperimentConfig& cfg) {
  const bool eps_sweep = cfg.kind != ExperimentKind::pump_coupling_sweep;
  const std::vector<double>& values = eps_sweep ? cfg.sweep_epsilons : cfg.sweep_gammas;
  if (values.empty()) throw std::invalid_argument("run_pump_sweep: empty sweep");

  const bool left_hot = cfg.temperature_left >= cfg.temperature_right;

  PumpReport report;
  report.sweep_is_epsilon = eps_sweep;
  SteadyStateCriteria criteria = cfg.steady;
  criteria.driven = true;

  for (double value : values) {
    const double epsilon = eps_sweep ? value : cfg.drive_epsilon;
    const double big_gamma = eps_sweep ? cfg.window_Gamma : value;
    ModelContext ctx =
        cfg.model(cfg.temperature_left, cfg.temperature_right, cfg.omega_left,
                  cfg.omega_right, big_gamma, epsilon > 0.0, epsilon, {});
    EnsembleResult ens = run_ensemble(ctx, cfg.propagator, cfg.run);

    PumpRow row;
    row.sweep_value = value;
    row.t_steady = detect_steady_state(ens.averaged, criteria);
    double t_from = row.t_steady.value_or(default_steady_fallback(ens.averaged));
    double t_to = ens.averaged.times_au.back();
    // Average over an integer number of drive periods ending at t_end.
    if (ctx.drive.enabled) {
      const double period = 2.0 * std::numbers::pi / ctx.drive.nu;
      const int k = static_cast<int>((t_to - t_from) / period);
      if (k >= 1) t_from = t_to - k * period;
    }

    auto j_cold_samples = window_mean_samples(
        ens.realizations, t_from, t_to,
        left_hot ? &ObservableSeries::j_right : &ObservableSeries::j_left);
    row.j_cold = scalar_stat(j_cold_samples);
    row.mean_power =
        scalar_stat(window_mean_samples(ens.realizations, t_from, t_to,
                                        &ObservableSeries::power));
    row.cop = coefficient_of_performance(row.j_cold.mean, row.mean_power.mean);
    row.entropy_rate = scalar_stat(entropy_samples(
        ens.realizations, t_from, t_to, cfg.temperature_left, cfg.temperature_right));
    report.rows.push_back(row);
  }

  for (const PumpRow& row : report.rows)
    if (!report.threshold && row.j_cold.mean > 0.0) report.threshold = row.sweep_value;
  auto best = std::max_element(
      report.rows.begin(), report.rows.end(),
      [](const PumpRow& a, const PumpRow& b) { return a.j_cold.mean < b.j_cold.mean; });
  if (best != report.rows.end()) report.best_cooling = best->sweep_value;
  return report;
}

CoherenceReport run_coherence_probe(const ExperimentConfig& cfg) {
  if (!(cfg.drive_t_off > 0.0))
    throw std::invalid_argument("run_coherence_probe: drive.t_off must be set");
  ExperimentConfig probe = cfg;
  probe.drive_enabled = true;
  ModelContext ctx = probe.model();
  ModelContext ctx_off = decoupled_model(ctx);
  EnsembleResult ens = run_ensemble(ctx, cfg.propagator, cfg.run, &ctx_off);

  CoherenceReport report;
  report.t_off = cfg.drive_t_off;

  SteadyStateCriteria criteria = cfg.steady;
  criteria.driven = true;
  // Judge steadiness on the pre-decoupling part only.
  ObservableSeries pre;
  for (size_t i = 0; i < ens.averaged.size(); ++i) {
    if (ens.averaged.times_au[i] > report.t_off) break;
    pre.times_au.push_back(ens.averaged.times_au[i]);
    pre.e_system.push_back(ens.averaged.e_system[i]);
    pre.j_left.push_back(ens.averaged.j_left[i]);
    pre.j_right.push_back(ens.averaged.j_right[i]);
  }
  auto t_steady = detect_steady_state(pre, criteria);
  report.steady_before_off = t_steady.has_value() && *t_steady < report.t_off;
  if (!report.steady_before_off)
    std::fprintf(stderr,
                 "warning: decoupling at t_off = %g a.u. happens before a steady state "
                 "was reached; continuing anyway\n",
                 report.t_off);

  // Post-decoupling signal: temporal variance of the ensemble <R> after t_off.
  // Pre-decoupling floor: the ensemble noise level of <R>, i.e. the mean
  // squared standard error of the ensemble average over an equal-length window
  // before t_off. The driven steady response is deterministic signal, not
  // noise, so it deliberately does not enter the floor.
  const double t_end = ens.averaged.times_au.back();
  const double span = t_end - report.t_off;
  auto variance_over = [&](double a, double b) {
    double s = 0.0, s2 = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < ens.averaged.size(); ++i) {
      const double t = ens.averaged.times_au[i];
      if (t >= a && t <= b) {
        s += ens.averaged.mean_r[i];
        s2 += ens.averaged.mean_r[i] * ens.averaged.mean_r[i];
        ++cnt;
      }
    }
    if (cnt < 2) return 0.0;
    const double mu = s / cnt;
    return s2 / cnt - mu * mu;
  };
  auto noise_floor_over = [&](double a, double b) {
    double s = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < ens.averaged.mean_r_err.size(); ++i) {
      const double t = ens.averaged.times_au[i];
      if (t >= a && t <= b) {
        s += ens.averaged.mean_r_err[i] * ens.averaged.mean_r_err[i];
        ++cnt;
      }
    }
    return cnt > 0 ? s / cnt : 0.0;
  };
  report.pre_variance = ens.averaged.mean_r_err.empty()
                            ? variance_over(report.t_off - span, report.t_off)
                            : noise_floor_over(report.t_off - span, report.t_off);
  report.post_variance = variance_over(report.t_off, t_end);

  double norm_at_off = 1.0;
  double drift = 0.0;
  bool past = false;
  for (size_t i = 0; i < ens.averaged.size(); ++i) {
    if (!past && ens.averaged.times_au[i] >= report.t_off) {
      norm_at_off = ens.averaged.norm[i];
      past = true;
    }
    if (past) drift = std::max(drift, std::fabs(ens.averaged.norm[i] - norm_at_off));
  }
  report.norm_drift = drift;
  report.averaged = std::move(ens.averaged);
  return report;
}

void emit_series_csv(const ObservableSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_series_csv: cannot open " + path);
  const bool has_err = !series.e_system_err.empty();
  out << "time_au,time_fs,E_S_hartree,J_L_hartree_per_au,J_R_hartree_per_au,"
         "P_hartree_per_au,mean_R_bohr,norm";
  if (has_err) out << ",E_S_err,J_L_err,J_R_err,P_err,mean_R_err";
  out << "\n";
  for (size_t i = 0; i < series.size(); ++i) {
    write_num(out, series.times_au[i], true);
    write_num(out, series.times_au[i] * au_time_fs);
    write_num(out, series.e_system[i]);
    write_num(out, series.j_left[i]);
    write_num(out, series.j_right[i]);
    write_num(out, series.power[i]);
    write_num(out, series.mean_r[i]);
    write_num(out, series.norm[i]);
    if (has_err) {
      write_num(out, series.e_system_err[i]);
      write_num(out, series.j_left_err[i]);
      write_num(out, series.j_right_err[i]);
      write_num(out, series.power_err[i]);
      write_num(out, series.mean_r_err[i]);
    }
    out << "\n";
  }
}

namespace {

std::string prepare_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  write_manifest(cfg, cfg.out_dir + "/manifest.txt");
  return cfg.out_dir;
}

}  // namespace

void emit_transport(const ExperimentConfig& cfg, const TransportReport& report) {
  const std::string dir = prepare_out_dir(cfg);
  std::ofstream out(dir + "/transport_summary.csv");
  out << "T_L_kelvin,T_R_kelvin,flux_hartree_per_au,flux_err,entropy_rate_per_au,"
         "entropy_rate_err,t_steady_au,steady\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const TransportRow& row = report.rows[i];
    write_num(out, row.t_left, true);
    write_num(out, row.t_right);
    write_num(out, row.flux.mean);
    write_num(out, row.flux.stderror);
    write_num(out, row.entropy_rate.mean);
    write_num(out, row.entropy_rate.stderror);
    write_num(out, row.t_steady.value_or(-1.0));
    out << "," << (row.t_steady ? 1 : 0) << "\n";
    emit_series_csv(report.averaged_series[i],
                    dir + "/transport_TL" + std::to_string(i) + "_series.csv");
  }
}

void emit_rectifier(const ExperimentConfig& cfg, const RectifierReport& report) {
  const std::string dir = prepare_out_dir(cfg);
  std::ofstream out(dir + "/rectifier_summary.csv");
  out << "omega_ratio,J_forward,J_forward_err,J_swapped,J_swapped_err,rectification_ratio,"
         "ratio_err,product,both_steady\n";
  for (const RectifierRow& row : report.rows) {
    write_num(out, row.omega_ratio, true);
    write_num(out, row.j_forward.mean);
    write_num(out, row.j_forward.stderror);
    write_num(out, row.j_swapped.mean);
    write_num(out, row.j_swapped.stderror);
    write_num(out, row.ratio);
    write_num(out, row.ratio_err);
    write_num(out, row.product);
    out << "," << (row.both_steady ? 1 : 0) << "\n";
  }
}

void emit_pump(const ExperimentConfig& cfg, const PumpReport& report) {
  const std::string dir = prepare_out_dir(cfg);
  std::ofstream out(dir + "/pump_summary.csv");
  out << (report.sweep_is_epsilon ? "epsilon" : "Gamma")
      << ",J_c_hartree_per_au,J_c_err,P_hartree_per_au,P_err,COP,entropy_rate_per_au,"
         "entropy_rate_err,steady\n";
  for (const PumpRow& row : report.rows) {
    write_num(out, row.sweep_value, true);
    write_num(out, row.j_cold.mean);
    write_num(out, row.j_cold.stderror);
    write_num(out, row.mean_power.mean);
    write_num(out, row.mean_power.stderror);
    write_num(out, row.cop.value_or(std::nan("")));
    write_num(out, row.entropy_rate.mean);
    write_num(out, row.entropy_rate.stderror);
    out << "," << (row.t_steady ? 1 : 0) << "\n";
  }
}

void emit_coherence(const ExperimentConfig& cfg, const CoherenceReport& report) {
  const std::string dir = prepare_out_dir(cfg);
  emit_series_csv(report.averaged, dir + "/coherence_series.csv");
  std::ofstream out(dir + "/coherence_summary.csv");
  out << "t_off_au,pre_variance_bohr2,post_variance_bohr2,norm_drift,steady_before_off\n";
  write_num(out, report.t_off, true);
  write_num(out, report.pre_variance);
  write_num(out, report.post_variance);
  write_num(out, report.norm_drift);
  out << "," << (report.steady_before_off ? 1 : 0) << "\n";
}

}  // namespace ssh
