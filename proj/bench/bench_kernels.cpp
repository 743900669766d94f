// Compares the OpenMP Hamiltonian kernel against the serial reference loop.
#include <chrono>
#include <cstdio>
#include <random>

#include "ssh/config.hpp"
#include "ssh/hamiltonian.hpp"

using namespace ssh;

namespace {

cvec random_state(std::uint64_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  cvec psi(dim);
  for (auto& x : psi) x = {gauss(rng), gauss(rng)};
  return psi;
}

template <typename F>
double time_ms(int reps, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  for (int n_modes : {2, 4, 6}) {
    ExperimentConfig cfg;
    cfg.bath_modes = n_modes;
    ModelContext ctx = cfg.model();
    cvec psi = random_state(ctx.dim(), rng);
    cvec out(ctx.dim());

    const int reps = n_modes >= 6 ? 20 : 100;
    const double parallel_ms =
        time_ms(reps, [&] { apply_hamiltonian(psi, ctx, 0.0, out); });
    const double serial_ms =
        time_ms(reps, [&] { apply_hamiltonian_serial(psi, ctx, 0.0, out); });
    std::printf("dim=%8llu (N_r=%d, %d+%d spins): parallel %8.3f ms  serial %8.3f ms  speedup %.2fx\n",
                static_cast<unsigned long long>(ctx.dim()), ctx.grid.n(), n_modes, n_modes,
                parallel_ms, serial_ms, serial_ms / parallel_ms);
  }
  return 0;
}
