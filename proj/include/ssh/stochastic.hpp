#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ssh/observables.hpp"
#include "ssh/propagator.hpp"

namespace ssh {

struct SwapSchedule {
  double rate = 0.005;  // swap events per spin per a.u. time
};

struct SwapEvent {
  double time;
  Side side;
  int spin;
};

struct RealizationConfig {
  int n_realizations = 10;
  std::uint64_t base_seed = 1;
  double t_end = 0.0;     // a.u.
  int sample_stride = 1;  // steps between observable records
  SwapSchedule swaps;
  int density_stride = 0;  // 0 disables p(R) snapshots
};

/// Stable seed derivation for realization workers (splitmix64 over the pair).
std::uint64_t realization_seed(std::uint64_t base_seed, int realization_index);

/// Projective swap of primary spin `spin` on `side` with a fresh thermal
/// secondary spin: read out the outgoing spin in its energy basis, collapse,
/// then re-inject the sampled spinor as the new tensor factor. Norm-preserving.
void apply_swap(std::span<cplx> psi, const ModelContext& ctx, Side side, int spin,
                double temperature, std::mt19937_64& rng);

/// Independent Poisson events per spin over one step window (t, t + dt],
/// returned sorted by time.
std::vector<SwapEvent> schedule_events(double rate, double t, double dt, int n_left,
                                       int n_right, std::mt19937_64& rng);

/// One stochastic trajectory: system ground state tensored with thermal
/// primary spins, unitary steps interleaved with scheduled swaps, observables
/// recorded every `sample_stride` steps. Deterministic in (base_seed, index).
/// When the drive's t_off is set, evolution continues with `ctx_off`
/// (decoupled, no swaps) from that time on.
ObservableSeries run_realization(const ModelContext& ctx, const PropagatorConfig& prop_cfg,
                                 const RealizationConfig& cfg, int realization_index,
                                 const ModelContext* ctx_off = nullptr);

/// Pointwise mean and standard error over realizations with identical time axes.
ObservableSeries ensemble_average(const std::vector<ObservableSeries>& series);

}  // namespace ssh
