#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssh/config.hpp"

namespace ssh {

struct ScalarStat {
  double mean = 0.0;
  double stderror = 0.0;
};

/// Mean and standard error of independent samples.
ScalarStat scalar_stat(const std::vector<double>& samples);

struct EnsembleResult {
  std::vector<ObservableSeries> realizations;
  ObservableSeries averaged;
};

/// Run all realizations (parallel workers) and average them.
EnsembleResult run_ensemble(const ModelContext& ctx, const PropagatorConfig& prop_cfg,
                            const RealizationConfig& run_cfg,
                            const ModelContext* ctx_off = nullptr);

/// Time-mean of the left-to-right flux (J_L - J_R)/2 over records with
/// t >= t_from, one sample per realization.
std::vector<double> window_flux_samples(const std::vector<ObservableSeries>& realizations,
                                        double t_from);
std::vector<double> window_mean_samples(const std::vector<ObservableSeries>& realizations,
                                        double t_from, double t_to,
                                        std::vector<double> ObservableSeries::* member);

struct TransportRow {
  double t_left = 0.0;
  double t_right = 0.0;
  ScalarStat flux;          // left-to-right, positive when heat flows rightward
  ScalarStat entropy_rate;  // Clausius rate, 1 / a.u. time
  std::optional<double> t_steady;
  std::vector<double> flux_per_realization;
  std::vector<double> entropy_per_realization;
};

struct TransportReport {
  std::vector<TransportRow> rows;
  std::vector<ObservableSeries> averaged_series;  // one per row
};

TransportReport run_transport(const ExperimentConfig& cfg);

struct RectifierRow {
  double omega_ratio = 0.0;
  ScalarStat j_forward;  // hot->cold, hot on the left
  ScalarStat j_swapped;  // hot->cold, baths exchanged
  double ratio = 0.0;
  double ratio_err = 0.0;
  double product = 0.0;  // ratio * omega_ratio
  bool both_steady = false;
};

struct RectifierReport {
  std::vector<RectifierRow> rows;
};

RectifierReport run_rectifier_sweep(const ExperimentConfig& cfg);

struct PumpRow {
  double sweep_value = 0.0;  // epsilon or Gamma
  ScalarStat j_cold;         // into-system current at the cold contact
  ScalarStat mean_power;
  std::optional<double> cop;
  ScalarStat entropy_rate;
  std::optional<double> t_steady;
};

struct PumpReport {
  std::vector<PumpRow> rows;
  bool sweep_is_epsilon = true;
  std::optional<double> threshold;      // first sweep value with j_cold > 0
  std::optional<double> best_cooling;   // sweep value of max j_cold
};

PumpReport run_pump_sweep(const ExperimentConfig& cfg);

struct CoherenceReport {
  ObservableSeries averaged;
  double t_off = 0.0;
  double pre_variance = 0.0;   // ensemble noise floor of <R> (mean squared
                               // standard error) over the window before t_off
  double post_variance = 0.0;  // temporal variance of ensemble <R> after t_off
  double norm_drift = 0.0;     // max |norm - norm(t_off)| after decoupling
  bool steady_before_off = false;
};

CoherenceReport run_coherence_probe(const ExperimentConfig& cfg);

// Result emission: CSV time series and sweep tables plus the run manifest.
void emit_series_csv(const ObservableSeries& series, const std::string& path);
void emit_transport(const ExperimentConfig& cfg, const TransportReport& report);
void emit_rectifier(const ExperimentConfig& cfg, const RectifierReport& report);
void emit_pump(const ExperimentConfig& cfg, const PumpReport& report);
void emit_coherence(const ExperimentConfig& cfg, const CoherenceReport& report);

}  // namespace ssh
