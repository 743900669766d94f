#include "ssh/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ssh {

double DriveParams::field(double t) const {
  if (!enabled || (t_off && t >= *t_off)) return 0.0;
  return epsilon * std::cos(nu * t);
}

double DriveParams::field_derivative(double t) const {
  if (!enabled || (t_off && t >= *t_off)) return 0.0;
  return -epsilon * nu * std::sin(nu * t);
}

ModelContext build_model(const Grid& grid, const SurfaceParams& surface,
                         const BathSpectrum& left_bath, const BathSpectrum& right_bath,
                         const CouplingWindow& left_window,
                         const CouplingWindow& right_window, const DriveParams& drive) {
  validate(surface);
  validate(left_window);
  validate(right_window);
  if (left_bath.side != Side::left || right_bath.side != Side::right)
    throw std::invalid_argument("build_model: bath sides mislabelled");
  if (drive.enabled && !(drive.nu > 0.0))
    throw std::invalid_argument("build_model: enabled drive needs nu > 0");
  if (drive.epsilon < 0.0) throw std::invalid_argument("build_model: epsilon must be >= 0");
  if (surface.left.mass != grid.mass())
    throw std::invalid_argument("build_model: surface mass disagrees with grid mass");

  ModelContext ctx;
  ctx.grid = grid;
  ctx.surface = surface;
  ctx.left_bath = left_bath;
  ctx.right_bath = right_bath;
  ctx.left_window = left_window;
  ctx.right_window = right_window;
  ctx.drive = drive;
  ctx.indexer = make_indexer(grid.n(), left_bath.n_modes, right_bath.n_modes);

  const int n = grid.n();
  ctx.potential.resize(n);
  ctx.window_left.resize(n);
  ctx.window_right.resize(n);
  ctx.dwindow_left.resize(n);
  ctx.dwindow_right.resize(n);
  ctx.dipole_moment.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = grid.positions[i];
    ctx.potential[i] = adiabatic_lower(r, surface);
    ctx.window_left[i] = coupling_window(r, left_window);
    ctx.window_right[i] = coupling_window(r, right_window);
    ctx.dwindow_left[i] = coupling_window_derivative(r, left_window);
    ctx.dwindow_right[i] = coupling_window_derivative(r, right_window);
    ctx.dipole_moment[i] = dipole(r, surface.dipole_mu);
  }

  // Spin-down carries energy 0, spin-up omega_j.
  const std::uint64_t n_configs = ctx.indexer.n_configs();
  ctx.bath_energy.assign(n_configs, 0.0);
  for (std::uint64_t c = 0; c < n_configs; ++c) {
    double e = 0.0;
    for (int j = 0; j < left_bath.n_modes; ++j)
      if (c >> ctx.indexer.spin_bit(Side::left, j) & 1) e += left_bath.omegas[j];
    for (int j = 0; j < right_bath.n_modes; ++j)
      if (c >> ctx.indexer.spin_bit(Side::right, j) & 1) e += right_bath.omegas[j];
    ctx.bath_energy[c] = e;
  }

  ctx.batched_fft = std::make_shared<BatchedFft>(n, static_cast<int>(n_configs));
  return ctx;
}

ModelContext decoupled_model(const ModelContext& ctx) {
  ModelContext off = ctx;
  off.left_window.Gamma = 0.0;
  off.right_window.Gamma = 0.0;
  off.drive.enabled = false;
  const int n = ctx.grid.n();
  off.window_left.assign(n, 0.0);
  off.window_right.assign(n, 0.0);
  off.dwindow_left.assign(n, 0.0);
  off.dwindow_right.assign(n, 0.0);
  return off;
}

}  // namespace ssh
