#include "ssh/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssh {

namespace {

void check_dims(std::span<const cplx> psi, const ModelContext& ctx, std::span<cplx> out) {
  if (psi.size() != ctx.dim() || out.size() != ctx.dim())
    throw std::invalid_argument("hamiltonian: wavefunction length mismatch");
}

// out(i, c) += f_side(i) * sum_j lambda_j * psi(i, c with spin bit j flipped)
void add_coupling(std::span<const cplx> psi, const ModelContext& ctx, Side side,
                  std::span<cplx> out) {
  const int n = ctx.grid.n();
  const auto& bath = ctx.bath(side);
  const auto& f = ctx.window(side);
  const std::int64_t n_configs = static_cast<std::int64_t>(ctx.indexer.n_configs());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_configs; ++c) {
    cplx* dst = out.data() + c * n;
    for (int j = 0; j < bath.n_modes; ++j) {
      const std::int64_t partner = c ^ (std::int64_t{1} << ctx.indexer.spin_bit(side, j));
      const cplx* src = psi.data() + partner * n;
      const double lam = bath.lambdas[j];
      for (int i = 0; i < n; ++i) dst[i] += lam * f[i] * src[i];
    }
  }
}

}  // namespace

void apply_hamiltonian(std::span<const cplx> psi, const ModelContext& ctx, double t,
                       std::span<cplx> out) {
  check_dims(psi, ctx, out);
  const int n = ctx.grid.n();
  const std::int64_t n_configs = static_cast<std::int64_t>(ctx.indexer.n_configs());

  // Kinetic term: batched spectral application, in place in `out`.
  std::copy(psi.begin(), psi.end(), out.begin());
  ctx.batched_fft->forward(out.data());
  const double inv_n = 1.0 / n;
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_configs; ++c) {
    cplx* slice = out.data() + c * n;
    for (int i = 0; i < n; ++i) slice[i] *= ctx.grid.kinetic_factors[i];
  }
  ctx.batched_fft->backward(out.data());

  // Diagonal terms: potential, bath energies, drive.
  const double field = ctx.drive.field(t);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_configs; ++c) {
    cplx* dst = out.data() + c * n;
    const cplx* src = psi.data() + c * n;
    const double e_bath = ctx.bath_energy[c];
    for (int i = 0; i < n; ++i) {
      const double diag = ctx.potential[i] + e_bath + field * ctx.dipole_moment[i];
      dst[i] = inv_n * dst[i] + diag * src[i];
    }
  }

  add_coupling(psi, ctx, Side::left, out);
  add_coupling(psi, ctx, Side::right, out);
}

cvec apply_hamiltonian(std::span<const cplx> psi, const ModelContext& ctx, double t) {
  cvec out(psi.size());
  apply_hamiltonian(psi, ctx, t, out);
  return out;
}

void apply_hamiltonian_serial(std::span<const cplx> psi, const ModelContext& ctx, double t,
                              std::span<cplx> out) {
  check_dims(psi, ctx, out);
  const int n = ctx.grid.n();
  const std::uint64_t n_configs = ctx.indexer.n_configs();
  const double field = ctx.drive.field(t);
  cvec slice_in(n), slice_out(n);
  for (std::uint64_t c = 0; c < n_configs; ++c) {
    const cplx* src = psi.data() + c * n;
    cplx* dst = out.data() + c * n;
    std::copy(src, src + n, slice_in.begin());
    apply_kinetic(slice_in, ctx.grid, slice_out);
    for (int i = 0; i < n; ++i) {
      const double diag = ctx.potential[i] + ctx.bath_energy[c] + field * ctx.dipole_moment[i];
      dst[i] = slice_out[i] + diag * src[i];
    }
    for (Side side : {Side::left, Side::right}) {
      const auto& bath = ctx.bath(side);
      const auto& f = ctx.window(side);
      for (int j = 0; j < bath.n_modes; ++j) {
        const std::uint64_t partner = c ^ (std::uint64_t{1} << ctx.indexer.spin_bit(side, j));
        const cplx* p = psi.data() + partner * n;
        for (int i = 0; i < n; ++i) dst[i] += bath.lambdas[j] * f[i] * p[i];
      }
    }
  }
}

void apply_coupling_term(std::span<const cplx> psi, const ModelContext& ctx, Side side,
                         std::span<cplx> out) {
  check_dims(psi, ctx, out);
  std::fill(out.begin(), out.end(), cplx{0.0});
  add_coupling(psi, ctx, side, out);
}

cvec apply_coupling_term(std::span<const cplx> psi, const ModelContext& ctx, Side side) {
  cvec out(psi.size());
  apply_coupling_term(psi, ctx, side, out);
  return out;
}

SpectralBounds spectral_bounds(const ModelContext& ctx) {
  const auto [v_min_it, v_max_it] =
      std::minmax_element(ctx.potential.begin(), ctx.potential.end());
  const double t_max =
      *std::max_element(ctx.grid.kinetic_factors.begin(), ctx.grid.kinetic_factors.end());
  const double bath_max =
      *std::max_element(ctx.bath_energy.begin(), ctx.bath_energy.end());

  double coupling_bound = 0.0;
  for (Side side : {Side::left, Side::right}) {
    const auto& f = ctx.window(side);
    const double f_max = *std::max_element(f.begin(), f.end());
    double lam_sum = 0.0;
    for (double l : ctx.bath(side).lambdas) lam_sum += l;
    coupling_bound += f_max * lam_sum;
  }

  double drive_bound = 0.0;
  if (ctx.drive.enabled) {
    for (double d : ctx.dipole_moment)
      drive_bound = std::max(drive_bound, ctx.drive.epsilon * std::fabs(d));
  }

  SpectralBounds b;
  b.e_max = t_max + *v_max_it + bath_max + coupling_bound + drive_bound;
  b.e_min = *v_min_it - coupling_bound - drive_bound;
  return b;
}

}  // namespace ssh
