#include "ssh/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssh {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

BatchedFft::BatchedFft(int n, int howmany) : n_(n), howmany_(howmany) {
  if (n < 2 || howmany < 1) throw std::invalid_argument("BatchedFft: bad dimensions");
  // Plan with a scratch buffer and FFTW_UNALIGNED so the plans apply to any
  // caller-owned array via the new-array execute interface.
  std::vector<cplx> scratch(static_cast<size_t>(n) * howmany);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fwd_plan_ = fftw_plan_many_dft(1, &n_, howmany_, buf, nullptr, 1, n_, buf, nullptr, 1,
                                 n_, FFTW_FORWARD, flags);
  bwd_plan_ = fftw_plan_many_dft(1, &n_, howmany_, buf, nullptr, 1, n_, buf, nullptr, 1,
                                 n_, FFTW_BACKWARD, flags);
  if (!fwd_plan_ || !bwd_plan_) throw std::runtime_error("BatchedFft: planning failed");
}

BatchedFft::~BatchedFft() {
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_plan_));
}

void BatchedFft::forward(cplx* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_plan_), buf, buf);
}

void BatchedFft::backward(cplx* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_plan_), buf, buf);
}

Grid build_grid(const GridSpec& spec) {
  if (!is_power_of_two(spec.n_points) || spec.n_points < 8)
    throw std::invalid_argument("GridSpec: n_points must be a power of two >= 8");
  if (!(spec.r_max > spec.r_min))
    throw std::invalid_argument("GridSpec: r_max must exceed r_min");
  if (!(spec.mass > 0.0)) throw std::invalid_argument("GridSpec: mass must be positive");

  Grid g;
  g.spec = spec;
  const int n = spec.n_points;
  const double length = spec.r_max - spec.r_min;
  g.dr = length / n;
  g.dk = 2.0 * std::numbers::pi / length;
  g.positions.resize(n);
  g.wavenumbers.resize(n);
  g.kinetic_factors.resize(n);
  for (int i = 0; i < n; ++i) {
    g.positions[i] = spec.r_min + i * g.dr;
    const int m = (i < n / 2) ? i : i - n;
    g.wavenumbers[i] = m * g.dk;
    g.kinetic_factors[i] = 0.5 * g.wavenumbers[i] * g.wavenumbers[i] / spec.mass;
  }
  g.fft = std::make_shared<BatchedFft>(n, 1);
  return g;
}

void apply_kinetic(std::span<const cplx> psi, const Grid& grid, std::span<cplx> out) {
  const int n = grid.n();
  if (static_cast<int>(psi.size()) != n || static_cast<int>(out.size()) != n)
    throw std::invalid_argument("apply_kinetic: length mismatch");
  std::copy(psi.begin(), psi.end(), out.begin());
  grid.fft->forward(out.data());
  for (int i = 0; i < n; ++i) out[i] *= grid.kinetic_factors[i];
  grid.fft->backward(out.data());
  const double inv = 1.0 / n;
  for (int i = 0; i < n; ++i) out[i] *= inv;
}

cvec apply_kinetic(std::span<const cplx> psi, const Grid& grid) {
  cvec out(psi.size());
  apply_kinetic(psi, grid, out);
  return out;
}

void apply_momentum(std::span<const cplx> psi, const Grid& grid, std::span<cplx> out) {
  const int n = grid.n();
  if (static_cast<int>(psi.size()) != n || static_cast<int>(out.size()) != n)
    throw std::invalid_argument("apply_momentum: length mismatch");
  std::copy(psi.begin(), psi.end(), out.begin());
  grid.fft->forward(out.data());
  for (int i = 0; i < n; ++i) out[i] *= grid.wavenumbers[i];
  grid.fft->backward(out.data());
  const double inv = 1.0 / n;
  for (int i = 0; i < n; ++i) out[i] *= inv;
}

}  // namespace ssh
