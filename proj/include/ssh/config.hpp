#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssh/model.hpp"
#include "ssh/observables.hpp"
#include "ssh/propagator.hpp"
#include "ssh/stochastic.hpp"

namespace ssh {

enum class ExperimentKind {
  transport,
  rectifier,
  pump_amplitude_sweep,
  pump_coupling_sweep,
  coherence_probe,
};

/// Fully resolved experiment configuration. Every field has a documented
/// default; load_config overrides from a strict key = value file.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::transport;

  GridSpec grid;

  double omega_left = 1.06e-4;  // hartree
  double omega_right = 2e-4;
  double center_left = -2.0;   // bohr
  double center_right = 2.0;
  double coupling_amplitude = 2e-5;  // hartree
  double coupling_width = 0.5;       // bohr
  double dipole_mu = 1.0;

  double window_gamma = 0.5;  // 1/bohr
  double window_Gamma = 0.5;

  int bath_modes = 4;
  double bath_omega_min = 5e-5;  // hartree
  double bath_omega_max = 2e-4;
  double bath_lambda = 1e-2;
  LambdaNorm lambda_norm = LambdaNorm::sqrt_density;
  double temperature_left = 25.0;   // kelvin
  double temperature_right = 15.0;

  bool drive_enabled = false;
  double drive_epsilon = 0.0;
  double drive_nu = 0.0;             // 0 = resonance |omega_L - omega_R|
  double drive_t_off = 0.0;          // 0 = never

  PropagatorConfig propagator{.dt = 200.0, .tolerance = 1e-10, .max_order = 4096};
  RealizationConfig run{.n_realizations = 10,
                        .base_seed = 1,
                        .t_end = 6e5,
                        .sample_stride = 5,
                        .swaps = {.rate = 2e-5},
                        .density_stride = 0};
  SteadyStateCriteria steady{.window = 2e5, .slope_tol = 2e-12, .match_tol = 0.75};

  std::vector<double> sweep_temperatures_left = {5.0, 25.0};
  std::vector<double> sweep_omega_ratios = {0.5, 0.75, 1.0, 1.5};
  std::vector<double> sweep_epsilons = {0.0, 1e-6, 2e-6, 5e-6, 1e-5, 2e-5};
  std::vector<double> sweep_gammas = {0.1, 0.25, 0.5, 1.0, 2.0};

  std::string out_dir = "results";

  double resolved_nu() const;
  SurfaceParams surface() const;
  /// Model with explicit overrides used by the sweeps.
  ModelContext model(double t_left, double t_right, double omega_l, double omega_r,
                     double big_gamma, bool drive_on, double epsilon,
                     std::optional<double> t_off) const;
  ModelContext model() const;
};

/// Parse `key = value` lines ('#' comments, blank lines ignored). Unknown keys
/// or malformed values are all reported together. An empty file yields the
/// documented defaults.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, std::vector<std::string>& errors);

/// Complete resolved configuration, reloadable by load_config for bit-exact
/// reruns.
std::string manifest_text(const ExperimentConfig& cfg);
void write_manifest(const ExperimentConfig& cfg, const std::string& path);

std::string kind_name(ExperimentKind kind);

}  // namespace ssh
