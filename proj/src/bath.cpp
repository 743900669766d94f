#include "ssh/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ssh/constants.hpp"

namespace ssh {

BathSpectrum build_spectrum(int n, double omega_min, double omega_max, double lambda,
                            double temperature, Side side, LambdaNorm norm,
                            std::optional<double> lambda1_override) {
  if (n < 1) throw std::invalid_argument("build_spectrum: need at least one mode");
  if (n == 1 && !lambda1_override)
    throw std::invalid_argument(
        "build_spectrum: a single-mode bath has no spacing; pass lambda1_override");
  if (!(omega_min > 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("build_spectrum: need omega_max > omega_min > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("build_spectrum: lambda must be positive");
  if (!(temperature > 0.0))
    throw std::invalid_argument("build_spectrum: temperature must be positive");

  BathSpectrum b;
  b.n_modes = n;
  b.temperature = temperature;
  b.side = side;
  if (n == 1) {
    b.omegas = {omega_min};
    b.lambdas = {*lambda1_override};
    return b;
  }
  const double d_omega = (omega_max - omega_min) / (n - 1);
  const double lambda_j =
      norm == LambdaNorm::paper ? lambda / d_omega : lambda * std::sqrt(d_omega);
  b.omegas.resize(n);
  b.lambdas.assign(n, lambda_j);
  for (int j = 0; j < n; ++j) b.omegas[j] = omega_min + j * d_omega;
  return b;
}

ThermalSpinSample sample_thermal_spin(double omega, double temperature,
                                      std::mt19937_64& rng) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("sample_thermal_spin: temperature must be positive");
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double theta1 = phase(rng);
  const double theta2 = phase(rng);
  const double x = omega / (4.0 * k_boltzmann * temperature);
  // Unit-norm spinor; |ground|^2 / |excited|^2 = exp(omega / k_B T).
  const double norm = std::sqrt(2.0 * std::cosh(2.0 * x));
  const double ag = std::exp(x) / norm;
  const double ae = std::exp(-x) / norm;
  return {ag * std::polar(1.0, theta1), ae * std::polar(1.0, theta2)};
}

std::uint64_t BasisIndexer::flat(int grid, std::uint64_t left_bits,
                                 std::uint64_t right_bits) const {
  if (grid < 0 || grid >= n_grid || left_bits >> n_left || right_bits >> n_right)
    throw std::out_of_range("BasisIndexer::flat: index out of range");
  const std::uint64_t config = left_bits | (right_bits << n_left);
  return static_cast<std::uint64_t>(grid) + config * static_cast<std::uint64_t>(n_grid);
}

void BasisIndexer::unflat(std::uint64_t flat_index, int& grid, std::uint64_t& left_bits,
                          std::uint64_t& right_bits) const {
  if (flat_index >= dim()) throw std::out_of_range("BasisIndexer::unflat: out of range");
  grid = static_cast<int>(flat_index % n_grid);
  const std::uint64_t config = flat_index / n_grid;
  left_bits = config & ((std::uint64_t{1} << n_left) - 1);
  right_bits = config >> n_left;
}

BasisIndexer make_indexer(int n_grid, int n_left, int n_right) {
  if (n_grid < 1 || n_left < 0 || n_right < 0)
    throw std::invalid_argument("make_indexer: bad dimensions");
  if (n_left + n_right > 24)
    throw std::invalid_argument("make_indexer: spin count exceeds addressable budget");
  return BasisIndexer{n_grid, n_left, n_right};
}

}  // namespace ssh
