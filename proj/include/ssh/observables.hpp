#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ssh/model.hpp"

namespace ssh {

/// Per-realization (or ensemble-averaged) time series of the tracked
/// observables. Stderr vectors are filled by ensemble averaging and empty for
/// a single realization. Currents are positive when energy flows into the
/// system; power is positive when the drive feeds the system.
struct ObservableSeries {
  std::vector<double> times_au;
  std::vector<double> e_system;  // hartree
  std::vector<double> j_left;    // hartree / a.u. time
  std::vector<double> j_right;
  std::vector<double> power;
  std::vector<double> mean_r;  // bohr
  std::vector<double> norm;

  std::vector<double> e_system_err;
  std::vector<double> j_left_err;
  std::vector<double> j_right_err;
  std::vector<double> power_err;
  std::vector<double> mean_r_err;

  // Optional probability-density snapshots (time, p over grid points).
  std::vector<std::pair<double, std::vector<double>>> density_snapshots;

  // Final-state edge density relative to the density maximum; the box is too
  // small when this exceeds 1e-4 (a warning is emitted at the ensemble level).
  double edge_density_ratio = 0.0;

  size_t size() const { return times_au.size(); }
};

double system_energy(std::span<const cplx> psi, const ModelContext& ctx);

/// Contact heat current from Eq.-of-motion bookkeeping: the rate of
/// system-energy change attributable to one system-bath coupling. Positive
/// means the bath feeds the system.
double heat_current(std::span<const cplx> psi, const ModelContext& ctx, Side side);

double instantaneous_power(std::span<const cplx> psi, const ModelContext& ctx, double t);

/// Clausius rate: currents are supplied in the into-system convention used
/// everywhere else; the negation to the into-bath convention happens here.
double entropy_production_rate(double j_hot_into_system, double j_cold_into_system,
                               double t_hot_kelvin, double t_cold_kelvin);

std::optional<double> coefficient_of_performance(double j_cooling, double mean_power);

double position_expectation(std::span<const cplx> psi, const ModelContext& ctx);
std::vector<double> probability_density(std::span<const cplx> psi, const ModelContext& ctx);

double wavefunction_norm(std::span<const cplx> psi);

/// Ratio of hot->cold steady currents between a run and its bath-swapped twin,
/// both measured positive in their respective hot->cold directions.
double rectification_ratio(double j_forward_hot_to_cold, double j_swapped_hot_to_cold);

struct SteadyStateCriteria {
  double window = 400.0;     // a.u.
  double slope_tol = 1e-9;   // hartree per a.u. on the E_S trend
  double match_tol = 0.1;    // relative J_L + J_R balance (undriven only)
  bool driven = false;
};

/// Earliest recorded time from which E_S is flat and (undriven) the two
/// contact currents balance over one window. Empty when never reached.
std::optional<double> detect_steady_state(const ObservableSeries& series,
                                          const SteadyStateCriteria& criteria);

}  // namespace ssh
