#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ssh/scenarios.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int realizations = 0;
  int threads = 0;
};

void add_common(CLI::App* app, CommonOpts& opts) {
  app->add_option("-c,--config", opts.config_path, "key = value configuration file");
  app->add_option("--out-dir", opts.out_dir, "output directory (overrides config)");
  app->add_option("--seed", opts.seed, "base random seed (overrides config)");
  app->add_option("--realizations", opts.realizations,
                  "number of stochastic realizations (overrides config)");
  app->add_option("--threads", opts.threads, "worker threads (default: all available)");
}

ssh::ExperimentConfig resolve(const CommonOpts& opts, ssh::ExperimentKind kind) {
  ssh::ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = ssh::load_config(opts.config_path);
  cfg.kind = kind;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.seed >= 0) cfg.run.base_seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.realizations > 0) cfg.run.n_realizations = opts.realizations;
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic surrogate-Hamiltonian heat transport and refrigeration"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string pump_sweep = "epsilon";

  auto* transport = app.add_subcommand(
      "transport", "steady-state heat transport over a left-temperature sweep");
  add_common(transport, opts);
  auto* rectifier =
      app.add_subcommand("rectifier", "rectification ratio over a frequency-ratio sweep");
  add_common(rectifier, opts);
  auto* pump = app.add_subcommand("pump", "driven refrigeration sweep");
  add_common(pump, opts);
  pump->add_option("--sweep", pump_sweep, "sweep variable: epsilon or gamma")
      ->check(CLI::IsMember({"epsilon", "gamma"}));
  auto* coherence =
      app.add_subcommand("coherence", "steady-state coherence probe with decoupling");
  add_common(coherence, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (transport->parsed()) {
      auto cfg = resolve(opts, ssh::ExperimentKind::transport);
      auto report = ssh::run_transport(cfg);
      ssh::emit_transport(cfg, report);
      for (const auto& row : report.rows)
        std::cout << "T_L=" << row.t_left << "K T_R=" << row.t_right
                  << "K flux=" << row.flux.mean << " +- " << row.flux.stderror
                  << (row.t_steady ? "" : "  [steady state NOT reached]") << "\n";
    } else if (rectifier->parsed()) {
      auto cfg = resolve(opts, ssh::ExperimentKind::rectifier);
      auto report = ssh::run_rectifier_sweep(cfg);
      ssh::emit_rectifier(cfg, report);
      for (const auto& row : report.rows)
        std::cout << "omega_L/omega_R=" << row.omega_ratio << " ratio=" << row.ratio
                  << " +- " << row.ratio_err << " product=" << row.product
                  << (row.both_steady ? "" : "  [steady state NOT reached]") << "\n";
    } else if (pump->parsed()) {
      auto kind = pump_sweep == "gamma" ? ssh::ExperimentKind::pump_coupling_sweep
                                        : ssh::ExperimentKind::pump_amplitude_sweep;
      auto cfg = resolve(opts, kind);
      auto report = ssh::run_pump_sweep(cfg);
      ssh::emit_pump(cfg, report);
      for (const auto& row : report.rows)
        std::cout << (report.sweep_is_epsilon ? "epsilon=" : "Gamma=") << row.sweep_value
                  << " J_c=" << row.j_cold.mean << " +- " << row.j_cold.stderror
                  << " P=" << row.mean_power.mean
                  << (row.cop ? " COP=" + std::to_string(*row.cop) : "") << "\n";
      if (report.threshold)
        std::cout << "cooling threshold at sweep value " << *report.threshold << "\n";
    } else if (coherence->parsed()) {
      auto cfg = resolve(opts, ssh::ExperimentKind::coherence_probe);
      auto report = ssh::run_coherence_probe(cfg);
      ssh::emit_coherence(cfg, report);
      std::cout << "t_off=" << report.t_off << " pre_var=" << report.pre_variance
                << " post_var=" << report.post_variance
                << " norm_drift=" << report.norm_drift << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
