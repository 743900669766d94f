#include "ssh/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssh {

std::uint64_t realization_seed(std::uint64_t base_seed, int realization_index) {
  // splitmix64 on the combined pair; stable across platforms and runs.
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (realization_index + 1ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void apply_swap(std::span<cplx> psi, const ModelContext& ctx, Side side, int spin,
                double temperature, std::mt19937_64& rng) {
  const auto& bath = ctx.bath(side);
  if (spin < 0 || spin >= bath.n_modes)
    throw std::invalid_argument("apply_swap: spin index out of range");
  const int bit = ctx.indexer.spin_bit(side, spin);
  const std::uint64_t stride = std::uint64_t{1} << bit;
  const std::uint64_t block = stride * static_cast<std::uint64_t>(ctx.grid.n());
  const std::uint64_t dim = ctx.dim();

  double p_up = 0.0;
  for (std::uint64_t base = 0; base < dim; base += 2 * block)
    for (std::uint64_t k = 0; k < block; ++k) p_up += std::norm(psi[base + block + k]);
  const double total = wavefunction_norm(psi);
  p_up /= total * total;

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const bool outcome_up = uni(rng) < p_up;
  const double p_chosen = outcome_up ? p_up : 1.0 - p_up;
  const ThermalSpinSample fresh = sample_thermal_spin(bath.omegas[spin], temperature, rng);

  if (p_chosen <= 0.0) {
    // Degenerate branch cannot be selected with positive probability; guard
    // against it anyway by re-injecting onto the populated branch.
    throw std::runtime_error("apply_swap: selected a zero-probability branch");
  }
  const double inv = 1.0 / (std::sqrt(p_chosen) * total);
  for (std::uint64_t base = 0; base < dim; base += 2 * block) {
    for (std::uint64_t k = 0; k < block; ++k) {
      const std::uint64_t down = base + k;
      const std::uint64_t up = down + block;
      const cplx collapsed = (outcome_up ? psi[up] : psi[down]) * inv;
      psi[down] = fresh.amplitude_ground * collapsed;
      psi[up] = fresh.amplitude_excited * collapsed;
    }
  }
}

std::vector<SwapEvent> schedule_events(double rate, double t, double dt, int n_left,
                                       int n_right, std::mt19937_64& rng) {
  std::vector<SwapEvent> events;
  if (rate <= 0.0) return events;
  std::poisson_distribution<int> count(rate * dt);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (Side side : {Side::left, Side::right}) {
    const int n_spins = side == Side::left ? n_left : n_right;
    for (int j = 0; j < n_spins; ++j) {
      const int k = count(rng);
      for (int e = 0; e < k; ++e) events.push_back({t + uni(rng) * dt, side, j});
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const SwapEvent& a, const SwapEvent& b) { return a.time < b.time; });
  return events;
}

ObservableSeries run_realization(const ModelContext& ctx, const PropagatorConfig& prop_cfg,
                                 const RealizationConfig& cfg, int realization_index,
                                 const ModelContext* ctx_off) {
  if (cfg.n_realizations < 1 || !(cfg.t_end > 0.0) || cfg.sample_stride < 1)
    throw std::invalid_argument("run_realization: bad realization config");
  const std::optional<double> t_off = ctx.drive.t_off;
  if (t_off && !ctx_off)
    throw std::invalid_argument("run_realization: t_off set but no decoupled context given");

  std::mt19937_64 rng(realization_seed(cfg.base_seed, realization_index));

  // System ground state by imaginary-time relaxation from a constant start.
  cvec start(ctx.grid.n(), cplx{1.0});
  GroundStateResult gs = imaginary_time_relax(start, ctx.grid, ctx.potential);

  // Tensor with thermal primary spins, left spins first (fixed sampling order).
  std::vector<ThermalSpinSample> samples;
  for (int j = 0; j < ctx.left_bath.n_modes; ++j)
    samples.push_back(
        sample_thermal_spin(ctx.left_bath.omegas[j], ctx.left_bath.temperature, rng));
  for (int j = 0; j < ctx.right_bath.n_modes; ++j)
    samples.push_back(
        sample_thermal_spin(ctx.right_bath.omegas[j], ctx.right_bath.temperature, rng));

  const int n = ctx.grid.n();
  const std::uint64_t n_configs = ctx.indexer.n_configs();
  cvec psi(ctx.dim());
  for (std::uint64_t c = 0; c < n_configs; ++c) {
    cplx amp{1.0};
    for (int b = 0; b < ctx.indexer.n_spins(); ++b)
      amp *= (c >> b & 1) ? samples[b].amplitude_excited : samples[b].amplitude_ground;
    for (int i = 0; i < n; ++i) psi[c * n + i] = amp * gs.psi[i];
  }

  ChebyshevPropagator prop(ctx, prop_cfg);
  std::optional<ChebyshevPropagator> prop_off;
  if (ctx_off) prop_off.emplace(*ctx_off, prop_cfg);

  const double dt = prop_cfg.dt;
  const long n_steps = static_cast<long>(std::ceil(cfg.t_end / dt));

  ObservableSeries series;
  auto record = [&](double t, const ModelContext& active) {
    series.times_au.push_back(t);
    series.e_system.push_back(system_energy(psi, active));
    series.j_left.push_back(heat_current(psi, active, Side::left));
    series.j_right.push_back(heat_current(psi, active, Side::right));
    series.power.push_back(instantaneous_power(psi, active, t));
    series.mean_r.push_back(position_expectation(psi, active));
    series.norm.push_back(wavefunction_norm(psi));
    if (cfg.density_stride > 0 &&
        (series.times_au.size() - 1) % static_cast<size_t>(cfg.density_stride) == 0)
      series.density_snapshots.emplace_back(t, probability_density(psi, active));
  };

  record(0.0, ctx);
  double t = 0.0;
  for (long step = 0; step < n_steps; ++step) {
    const bool decoupled = t_off && t >= *t_off;
    const ModelContext& active = decoupled ? *ctx_off : ctx;

    std::vector<SwapEvent> events;
    if (!decoupled)
      events = schedule_events(cfg.swaps.rate, t, dt, ctx.left_bath.n_modes,
                               ctx.right_bath.n_modes, rng);

    (decoupled ? *prop_off : prop).step(psi, t);
    t += dt;

    for (const SwapEvent& ev : events) {
      const double temp = ctx.bath(ev.side).temperature;
      apply_swap(psi, ctx, ev.side, ev.spin, temp, rng);
    }

    if ((step + 1) % cfg.sample_stride == 0) record(t, active);
  }

  const std::vector<double> p_final = probability_density(psi, ctx);
  const double p_max = *std::max_element(p_final.begin(), p_final.end());
  if (p_max > 0.0)
    series.edge_density_ratio = std::max(p_final.front(), p_final.back()) / p_max;
  return series;
}

ObservableSeries ensemble_average(const std::vector<ObservableSeries>& series) {
  if (series.empty()) throw std::invalid_argument("ensemble_average: no series");
  const size_t m = series.front().size();
  for (const auto& s : series)
    if (s.size() != m || s.times_au != series.front().times_au)
      throw std::invalid_argument("ensemble_average: mismatched time axes");

  const double cnt = static_cast<double>(series.size());
  ObservableSeries avg;
  avg.times_au = series.front().times_au;

  auto reduce = [&](auto member, std::vector<double>& mean, std::vector<double>& err) {
    mean.assign(m, 0.0);
    err.assign(m, 0.0);
    for (size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (const auto& r : series) s += (r.*member)[i];
      const double mu = s / cnt;
      double var = 0.0;
      for (const auto& r : series) {
        const double d = (r.*member)[i] - mu;
        var += d * d;
      }
      mean[i] = mu;
      err[i] = series.size() > 1 ? std::sqrt(var / (cnt * (cnt - 1.0))) : 0.0;
    }
  };

  reduce(&ObservableSeries::e_system, avg.e_system, avg.e_system_err);
  reduce(&ObservableSeries::j_left, avg.j_left, avg.j_left_err);
  reduce(&ObservableSeries::j_right, avg.j_right, avg.j_right_err);
  reduce(&ObservableSeries::power, avg.power, avg.power_err);
  reduce(&ObservableSeries::mean_r, avg.mean_r, avg.mean_r_err);

  std::vector<double> norm_err;
  reduce(&ObservableSeries::norm, avg.norm, norm_err);
  return avg;
}

}  // namespace ssh
