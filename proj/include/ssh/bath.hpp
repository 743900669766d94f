#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ssh {

enum class Side { left, right };

enum class LambdaNorm {
  paper,         // lambda_j = lambda / d_omega
  sqrt_density,  // lambda_j = lambda * sqrt(d_omega)
};

struct BathSpectrum {
  int n_modes = 0;
  std::vector<double> omegas;   // hartree, strictly increasing
  std::vector<double> lambdas;  // a.u.
  double temperature = 0.0;     // kelvin, of the attached secondary bath
  Side side = Side::left;
};

/// Uniform spectrum on [omega_min, omega_max] with couplings set by `norm`.
/// The j=0 mode uses the same spacing as all others. A single-mode bath has no
/// defined spacing and therefore needs `lambda1_override` (the coupling value
/// itself); the lone mode sits at omega_min.
BathSpectrum build_spectrum(int n, double omega_min, double omega_max, double lambda,
                            double temperature, Side side,
                            LambdaNorm norm = LambdaNorm::paper,
                            std::optional<double> lambda1_override = {});

/// One secondary-bath spin: thermal amplitudes with independent random phases,
/// normalized to unit norm. Ground component pairs with spin-down (energy 0).
struct ThermalSpinSample {
  std::complex<double> amplitude_ground;
  std::complex<double> amplitude_excited;
};

ThermalSpinSample sample_thermal_spin(double omega, double temperature, std::mt19937_64& rng);

/// Flat indexing of the composite basis (grid point x left spins x right spins).
/// The grid index varies fastest; left spin j contributes stride 2^j * n_grid,
/// right spin j contributes stride 2^(n_left + j) * n_grid.
struct BasisIndexer {
  int n_grid = 0;
  int n_left = 0;
  int n_right = 0;

  int n_spins() const { return n_left + n_right; }
  std::uint64_t n_configs() const { return std::uint64_t{1} << n_spins(); }
  std::uint64_t dim() const { return n_configs() * static_cast<std::uint64_t>(n_grid); }

  std::uint64_t flat(int grid, std::uint64_t left_bits, std::uint64_t right_bits) const;
  void unflat(std::uint64_t flat_index, int& grid, std::uint64_t& left_bits,
              std::uint64_t& right_bits) const;

  /// Global spin bit position for spin j on the given side.
  int spin_bit(Side side, int j) const { return side == Side::left ? j : n_left + j; }
};

BasisIndexer make_indexer(int n_grid, int n_left, int n_right);

}  // namespace ssh
