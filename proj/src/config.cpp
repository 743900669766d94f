#include "ssh/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ssh {

double ExperimentConfig::resolved_nu() const {
  return drive_nu > 0.0 ? drive_nu : std::fabs(omega_left - omega_right);
}

SurfaceParams ExperimentConfig::surface() const {
  SurfaceParams s;
  s.left = {omega_left, center_left, grid.mass};
  s.right = {omega_right, center_right, grid.mass};
  s.coupling = {coupling_amplitude, find_crossing(s.left, s.right), coupling_width};
  s.dipole_mu = dipole_mu;
  return s;
}

ModelContext ExperimentConfig::model(double t_left, double t_right, double omega_l,
                                     double omega_r, double big_gamma, bool drive_on,
                                     double epsilon, std::optional<double> t_off) const {
  SurfaceParams s;
  s.left = {omega_l, center_left, grid.mass};
  s.right = {omega_r, center_right, grid.mass};
  s.coupling = {coupling_amplitude, find_crossing(s.left, s.right), coupling_width};
  s.dipole_mu = dipole_mu;

  Grid g = build_grid(grid);
  // A single-mode bath takes the whole band as its effective spacing.
  std::optional<double> lambda1;
  if (bath_modes == 1) {
    const double band = bath_omega_max - bath_omega_min;
    lambda1 = lambda_norm == LambdaNorm::paper ? bath_lambda / band
                                               : bath_lambda * std::sqrt(band);
  }
  BathSpectrum left = build_spectrum(bath_modes, bath_omega_min, bath_omega_max,
                                     bath_lambda, t_left, Side::left, lambda_norm, lambda1);
  BathSpectrum right =
      build_spectrum(bath_modes, bath_omega_min, bath_omega_max, bath_lambda, t_right,
                     Side::right, lambda_norm, lambda1);
  CouplingWindow wl{window_gamma, big_gamma, center_left};
  CouplingWindow wr{window_gamma, big_gamma, center_right};
  DriveParams drive;
  drive.enabled = drive_on;
  drive.epsilon = epsilon;
  drive.nu = drive_on ? std::fabs(omega_l - omega_r) : 0.0;
  if (drive_nu > 0.0) drive.nu = drive_nu;
  drive.t_off = t_off;
  return build_model(g, s, left, right, wl, wr, drive);
}

ModelContext ExperimentConfig::model() const {
  std::optional<double> t_off;
  if (drive_t_off > 0.0) t_off = drive_t_off;
  return model(temperature_left, temperature_right, omega_left, omega_right, window_Gamma,
               drive_enabled, drive_epsilon, t_off);
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::transport: return "transport";
    case ExperimentKind::rectifier: return "rectifier";
    case ExperimentKind::pump_amplitude_sweep: return "pump_amplitude_sweep";
    case ExperimentKind::pump_coupling_sweep: return "pump_coupling_sweep";
    case ExperimentKind::coherence_probe: return "coherence_probe";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, bool& ok) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  ok = true;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) ok = false;
    } catch (...) {
      ok = false;
    }
  }
  if (out.empty()) ok = false;
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  char buf[64];
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, std::vector<std::string>& errors) {
  ExperimentConfig cfg;

  using Setter = std::function<bool(const std::string&)>;
  std::map<std::string, Setter> setters;

  auto num = [&](const std::string& key, double& target) {
    setters[key] = [&target](const std::string& v) {
      try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) return false;
        target = x;
        return true;
      } catch (...) {
        return false;
      }
    };
  };
  auto integer = [&](const std::string& key, int& target) {
    setters[key] = [&target](const std::string& v) {
      try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) return false;
        target = static_cast<int>(x);
        return true;
      } catch (...) {
        return false;
      }
    };
  };
  auto boolean = [&](const std::string& key, bool& target) {
    setters[key] = [&target](const std::string& v) {
      if (v == "true" || v == "1") { target = true; return true; }
      if (v == "false" || v == "0") { target = false; return true; }
      return false;
    };
  };
  auto list = [&](const std::string& key, std::vector<double>& target) {
    setters[key] = [&target](const std::string& v) {
      bool ok = false;
      auto parsed = parse_list(v, ok);
      if (ok) target = std::move(parsed);
      return ok;
    };
  };

  setters["experiment.kind"] = [&cfg](const std::string& v) {
    if (v == "transport") cfg.kind = ExperimentKind::transport;
    else if (v == "rectifier") cfg.kind = ExperimentKind::rectifier;
    else if (v == "pump_amplitude_sweep") cfg.kind = ExperimentKind::pump_amplitude_sweep;
    else if (v == "pump_coupling_sweep") cfg.kind = ExperimentKind::pump_coupling_sweep;
    else if (v == "coherence_probe") cfg.kind = ExperimentKind::coherence_probe;
    else return false;
    return true;
  };
  integer("grid.n_points", cfg.grid.n_points);
  num("grid.r_min", cfg.grid.r_min);
  num("grid.r_max", cfg.grid.r_max);
  num("grid.mass", cfg.grid.mass);
  num("surface.omega_left", cfg.omega_left);
  num("surface.omega_right", cfg.omega_right);
  num("surface.center_left", cfg.center_left);
  num("surface.center_right", cfg.center_right);
  num("surface.coupling_amplitude", cfg.coupling_amplitude);
  num("surface.coupling_width", cfg.coupling_width);
  num("surface.dipole_mu", cfg.dipole_mu);
  num("window.gamma", cfg.window_gamma);
  num("window.Gamma", cfg.window_Gamma);
  integer("bath.n_modes", cfg.bath_modes);
  num("bath.omega_min", cfg.bath_omega_min);
  num("bath.omega_max", cfg.bath_omega_max);
  num("bath.lambda", cfg.bath_lambda);
  setters["bath.lambda_norm"] = [&cfg](const std::string& v) {
    if (v == "paper") cfg.lambda_norm = LambdaNorm::paper;
    else if (v == "sqrt_density") cfg.lambda_norm = LambdaNorm::sqrt_density;
    else return false;
    return true;
  };
  num("bath.temperature_left", cfg.temperature_left);
  num("bath.temperature_right", cfg.temperature_right);
  boolean("drive.enabled", cfg.drive_enabled);
  num("drive.epsilon", cfg.drive_epsilon);
  num("drive.nu", cfg.drive_nu);
  num("drive.t_off", cfg.drive_t_off);
  num("propagator.dt", cfg.propagator.dt);
  num("propagator.tolerance", cfg.propagator.tolerance);
  integer("propagator.max_order", cfg.propagator.max_order);
  integer("run.realizations", cfg.run.n_realizations);
  setters["run.base_seed"] = [&cfg](const std::string& v) {
    try {
      size_t pos = 0;
      cfg.run.base_seed = std::stoull(v, &pos);
      return pos == v.size();
    } catch (...) {
      return false;
    }
  };
  num("run.t_end", cfg.run.t_end);
  integer("run.sample_stride", cfg.run.sample_stride);
  num("run.swap_rate", cfg.run.swaps.rate);
  integer("run.density_stride", cfg.run.density_stride);
  num("steady.window", cfg.steady.window);
  num("steady.slope_tol", cfg.steady.slope_tol);
  num("steady.match_tol", cfg.steady.match_tol);
  list("sweep.temperatures_left", cfg.sweep_temperatures_left);
  list("sweep.omega_ratios", cfg.sweep_omega_ratios);
  list("sweep.epsilons", cfg.sweep_epsilons);
  list("sweep.gammas", cfg.sweep_gammas);
  setters["output.dir"] = [&cfg](const std::string& v) {
    cfg.out_dir = v;
    return true;
  };

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (!it->second(value)) {
      errors.push_back("line " + std::to_string(lineno) + ": bad value for '" + key +
                       "': '" + value + "'");
    }
  }

  // Cross-field validation, all violations reported.
  if (cfg.grid.n_points < 8 || (cfg.grid.n_points & (cfg.grid.n_points - 1)))
    errors.push_back("grid.n_points: must be a power of two >= 8");
  if (!(cfg.grid.r_max > cfg.grid.r_min)) errors.push_back("grid.r_max: must exceed r_min");
  if (!(cfg.grid.mass > 0.0)) errors.push_back("grid.mass: must be positive");
  if (!(cfg.omega_left > 0.0)) errors.push_back("surface.omega_left: must be positive");
  if (!(cfg.omega_right > 0.0)) errors.push_back("surface.omega_right: must be positive");
  if (!(cfg.center_left < cfg.center_right))
    errors.push_back("surface.center_left: must lie left of surface.center_right");
  if (cfg.bath_modes < 1) errors.push_back("bath.n_modes: must be >= 1");
  if (!(cfg.bath_omega_min > 0.0) || !(cfg.bath_omega_max > cfg.bath_omega_min))
    errors.push_back("bath.omega_min/omega_max: need omega_max > omega_min > 0");
  if (!(cfg.bath_lambda > 0.0)) errors.push_back("bath.lambda: must be positive");
  if (!(cfg.temperature_left > 0.0))
    errors.push_back("bath.temperature_left: must be positive");
  if (!(cfg.temperature_right > 0.0))
    errors.push_back("bath.temperature_right: must be positive");
  if (cfg.drive_epsilon < 0.0) errors.push_back("drive.epsilon: must be >= 0");
  if (!(cfg.propagator.dt > 0.0)) errors.push_back("propagator.dt: must be positive");
  if (cfg.run.n_realizations < 1) errors.push_back("run.realizations: must be >= 1");
  if (!(cfg.run.t_end > 0.0)) errors.push_back("run.t_end: must be positive");
  if (cfg.run.sample_stride < 1) errors.push_back("run.sample_stride: must be >= 1");
  if (cfg.run.swaps.rate < 0.0) errors.push_back("run.swap_rate: must be >= 0");

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> errors;
  ExperimentConfig cfg = parse_config(buf.str(), errors);
  if (!errors.empty()) {
    std::string msg = "load_config: invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  return cfg;
}

std::string manifest_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  char buf[64];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << key << " = " << buf << "\n";
  };
  out << "# run manifest (reloadable configuration)\n";
  out << "# sshsim 1.0.0\n";
  out << "experiment.kind = " << kind_name(cfg.kind) << "\n";
  out << "grid.n_points = " << cfg.grid.n_points << "\n";
  num("grid.r_min", cfg.grid.r_min);
  num("grid.r_max", cfg.grid.r_max);
  num("grid.mass", cfg.grid.mass);
  num("surface.omega_left", cfg.omega_left);
  num("surface.omega_right", cfg.omega_right);
  num("surface.center_left", cfg.center_left);
  num("surface.center_right", cfg.center_right);
  num("surface.coupling_amplitude", cfg.coupling_amplitude);
  num("surface.coupling_width", cfg.coupling_width);
  num("surface.dipole_mu", cfg.dipole_mu);
  num("window.gamma", cfg.window_gamma);
  num("window.Gamma", cfg.window_Gamma);
  out << "bath.n_modes = " << cfg.bath_modes << "\n";
  num("bath.omega_min", cfg.bath_omega_min);
  num("bath.omega_max", cfg.bath_omega_max);
  num("bath.lambda", cfg.bath_lambda);
  out << "bath.lambda_norm = "
      << (cfg.lambda_norm == LambdaNorm::paper ? "paper" : "sqrt_density") << "\n";
  num("bath.temperature_left", cfg.temperature_left);
  num("bath.temperature_right", cfg.temperature_right);
  out << "drive.enabled = " << (cfg.drive_enabled ? "true" : "false") << "\n";
  num("drive.epsilon", cfg.drive_epsilon);
  num("drive.nu", cfg.drive_nu);
  num("drive.t_off", cfg.drive_t_off);
  num("propagator.dt", cfg.propagator.dt);
  num("propagator.tolerance", cfg.propagator.tolerance);
  out << "propagator.max_order = " << cfg.propagator.max_order << "\n";
  out << "run.realizations = " << cfg.run.n_realizations << "\n";
  out << "run.base_seed = " << cfg.run.base_seed << "\n";
  num("run.t_end", cfg.run.t_end);
  out << "run.sample_stride = " << cfg.run.sample_stride << "\n";
  num("run.swap_rate", cfg.run.swaps.rate);
  out << "run.density_stride = " << cfg.run.density_stride << "\n";
  num("steady.window", cfg.steady.window);
  num("steady.slope_tol", cfg.steady.slope_tol);
  num("steady.match_tol", cfg.steady.match_tol);
  out << "sweep.temperatures_left = " << join(cfg.sweep_temperatures_left) << "\n";
  out << "sweep.omega_ratios = " << join(cfg.sweep_omega_ratios) << "\n";
  out << "sweep.epsilons = " << join(cfg.sweep_epsilons) << "\n";
  out << "sweep.gammas = " << join(cfg.sweep_gammas) << "\n";
  out << "output.dir = " << cfg.out_dir << "\n";
  return out.str();
}

void write_manifest(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << manifest_text(cfg);
}

}  // namespace ssh
