#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ssh/bath.hpp"
#include "ssh/grid.hpp"
#include "ssh/potential.hpp"

namespace ssh {

struct DriveParams {
  bool enabled = false;
  double epsilon = 0.0;  // field amplitude, a.u.
  double nu = 0.0;       // angular frequency, hartree
  std::optional<double> t_off;  // switch-off time, a.u.

  double field(double t) const;  // epsilon * cos(nu t), 0 when off
  double field_derivative(double t) const;  // -epsilon * nu * sin(nu t)
};

/// Immutable bundle defining the total Hamiltonian action. Precomputes every
/// diagonal the inner loop needs: adiabatic potential, coupling windows and
/// their derivatives on the grid, dipole, and per-configuration bath energies.
struct ModelContext {
  Grid grid;
  SurfaceParams surface;
  BathSpectrum left_bath;
  BathSpectrum right_bath;
  CouplingWindow left_window;
  CouplingWindow right_window;
  DriveParams drive;
  BasisIndexer indexer;

  std::vector<double> potential;       // V_adia(r_i)
  std::vector<double> window_left;     // f_L(r_i)
  std::vector<double> window_right;    // f_R(r_i)
  std::vector<double> dwindow_left;    // f_L'(r_i)
  std::vector<double> dwindow_right;   // f_R'(r_i)
  std::vector<double> dipole_moment;   // mu * r_i
  std::vector<double> bath_energy;     // per spin configuration

  std::shared_ptr<const BatchedFft> batched_fft;  // all spin slices at once

  std::uint64_t dim() const { return indexer.dim(); }
  const BathSpectrum& bath(Side s) const { return s == Side::left ? left_bath : right_bath; }
  const std::vector<double>& window(Side s) const {
    return s == Side::left ? window_left : window_right;
  }
  const std::vector<double>& window_derivative(Side s) const {
    return s == Side::left ? dwindow_left : dwindow_right;
  }
};

ModelContext build_model(const Grid& grid, const SurfaceParams& surface,
                         const BathSpectrum& left_bath, const BathSpectrum& right_bath,
                         const CouplingWindow& left_window,
                         const CouplingWindow& right_window, const DriveParams& drive);

/// Copy of `ctx` with both coupling windows zeroed and the drive disabled;
/// used after a decoupling time and for isolated-system checks.
ModelContext decoupled_model(const ModelContext& ctx);

}  // namespace ssh
