#include "ssh/observables.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssh/constants.hpp"
#include "ssh/hamiltonian.hpp"

namespace ssh {

namespace {

// Deterministic reduction: per-slice partials summed in fixed order.
double sum_partials(const std::vector<double>& partials) {
  return std::accumulate(partials.begin(), partials.end(), 0.0);
}

}  // namespace

double wavefunction_norm(std::span<const cplx> psi) {
  double s = 0.0;
  for (const cplx& x : psi) s += std::norm(x);
  return std::sqrt(s);
}

double system_energy(std::span<const cplx> psi, const ModelContext& ctx) {
  if (psi.size() != ctx.dim()) throw std::invalid_argument("system_energy: length mismatch");
  const int n = ctx.grid.n();
  const std::int64_t n_configs = static_cast<std::int64_t>(ctx.indexer.n_configs());

  cvec tilde(psi.begin(), psi.end());
  ctx.batched_fft->forward(tilde.data());

  std::vector<double> partials(n_configs, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_configs; ++c) {
    const cplx* slice = psi.data() + c * n;
    const cplx* spec = tilde.data() + c * n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += ctx.potential[i] * std::norm(slice[i]);
      s += ctx.grid.kinetic_factors[i] * std::norm(spec[i]) / n;
    }
    partials[c] = s;
  }
  return sum_partials(partials);
}

double heat_current(std::span<const cplx> psi, const ModelContext& ctx, Side side) {
  if (psi.size() != ctx.dim()) throw std::invalid_argument("heat_current: length mismatch");
  const int n = ctx.grid.n();
  const std::int64_t n_configs = static_cast<std::int64_t>(ctx.indexer.n_configs());

  // Exact discrete commutator J = <i [H_SB, H_S]> = -2 Im <C psi | T psi>,
  // with C the contact coupling term and T the spectral kinetic operator.
  // The potential drops out because it commutes with the position window, and
  // using the grid operators themselves (rather than the continuum expression
  // through f') keeps dE_S/dt = J_L + J_R exact for the discrete dynamics.
  const cvec chi = apply_coupling_term(psi, ctx, side);

  cvec t_psi(psi.begin(), psi.end());
  ctx.batched_fft->forward(t_psi.data());
  const std::int64_t total = static_cast<std::int64_t>(ctx.dim());
  const double inv_n = 1.0 / n;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i)
    t_psi[i] *= ctx.grid.kinetic_factors[i % n] * inv_n;
  ctx.batched_fft->backward(t_psi.data());

  std::vector<double> partials(n_configs, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_configs; ++c) {
    const cplx* a = chi.data() + c * n;
    const cplx* b = t_psi.data() + c * n;
    cplx val = 0.0;
    for (int i = 0; i < n; ++i) val += std::conj(a[i]) * b[i];
    partials[c] = val.imag();
  }
  // Orientation: positive means the bath feeds the system, so that
  // dE_S/dt = J_L + J_R (+ drive term) holds.
  return -2.0 * sum_partials(partials);
}

double instantaneous_power(std::span<const cplx> psi, const ModelContext& ctx, double t) {
  if (!ctx.drive.enabled) return 0.0;
  // <mu R> * d/dt (eps cos(nu t))
  return position_expectation(psi, ctx) * ctx.surface.dipole_mu *
         ctx.drive.field_derivative(t);
}

double entropy_production_rate(double j_hot_into_system, double j_cold_into_system,
                               double t_hot_kelvin, double t_cold_kelvin) {
  if (!(t_hot_kelvin > 0.0) || !(t_cold_kelvin > 0.0))
    throw std::invalid_argument("entropy_production_rate: temperatures must be positive");
  const double t_hot = k_boltzmann * t_hot_kelvin;
  const double t_cold = k_boltzmann * t_cold_kelvin;
  return (-j_hot_into_system) / t_hot + (-j_cold_into_system) / t_cold;
}

std::optional<double> coefficient_of_performance(double j_cooling, double mean_power) {
  if (!(mean_power > 0.0)) return std::nullopt;
  return j_cooling / mean_power;
}

std::vector<double> probability_density(std::span<const cplx> psi, const ModelContext& ctx) {
  if (psi.size() != ctx.dim())
    throw std::invalid_argument("probability_density: length mismatch");
  const int n = ctx.grid.n();
  const std::uint64_t n_configs = ctx.indexer.n_configs();
  std::vector<double> p(n, 0.0);
  for (std::uint64_t c = 0; c < n_configs; ++c) {
    const cplx* slice = psi.data() + c * n;
    for (int i = 0; i < n; ++i) p[i] += std::norm(slice[i]);
  }
  return p;
}

double position_expectation(std::span<const cplx> psi, const ModelContext& ctx) {
  const std::vector<double> p = probability_density(psi, ctx);
  double r = 0.0;
  for (int i = 0; i < ctx.grid.n(); ++i) r += ctx.grid.positions[i] * p[i];
  return r;
}

double rectification_ratio(double j_forward_hot_to_cold, double j_swapped_hot_to_cold) {
  if (j_swapped_hot_to_cold == 0.0)
    throw std::invalid_argument("rectification_ratio: swapped current is zero");
  return j_forward_hot_to_cold / j_swapped_hot_to_cold;
}

std::optional<double> detect_steady_state(const ObservableSeries& series,
                                          const SteadyStateCriteria& criteria) {
  const size_t m = series.size();
  if (m < 4) return std::nullopt;
  const double t0 = series.times_au.front();
  const double t_end = series.times_au.back();
  if (t_end - t0 < 2.0 * criteria.window) return std::nullopt;

  auto window_end = [&](size_t start) {
    size_t e = start;
    while (e + 1 < m && series.times_au[e + 1] <= series.times_au[start] + criteria.window)
      ++e;
    return e;
  };

  for (size_t s = 0; s < m; ++s) {
    const size_t e = window_end(s);
    if (e >= m - 1 && series.times_au[e] - series.times_au[s] < criteria.window) break;
    if (e - s < 3) continue;

    // Least-squares slope of E_S over the window.
    double st = 0, se = 0, stt = 0, ste = 0;
    const size_t cnt = e - s + 1;
    for (size_t i = s; i <= e; ++i) {
      st += series.times_au[i];
      se += series.e_system[i];
      stt += series.times_au[i] * series.times_au[i];
      ste += series.times_au[i] * series.e_system[i];
    }
    const double denom = cnt * stt - st * st;
    if (denom == 0.0) continue;
    const double slope = (cnt * ste - st * se) / denom;
    if (std::fabs(slope) >= criteria.slope_tol) continue;

    if (!criteria.driven) {
      double jl = 0, jr = 0;
      for (size_t i = s; i <= e; ++i) {
        jl += series.j_left[i];
        jr += series.j_right[i];
      }
      jl /= cnt;
      jr /= cnt;
      double floor = 0.0;
      if (!series.j_left_err.empty()) {
        for (size_t i = s; i <= e; ++i)
          floor = std::max(floor, 2.0 * (series.j_left_err[i] + series.j_right_err[i]));
      }
      const double bound = criteria.match_tol * std::max(std::fabs(jl), std::fabs(jr)) + floor;
      if (std::fabs(jl + jr) > bound) continue;
    }
    return series.times_au[s];
  }
  return std::nullopt;
}

}  // namespace ssh
