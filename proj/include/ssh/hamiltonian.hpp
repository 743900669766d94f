#pragma once

#include <span>

#include "ssh/model.hpp"

namespace ssh {

/// out = H(t) psi, matrix-free. Kinetic energy is applied spectrally per spin
/// slice (batched FFT), everything else is diagonal or a spin-bit flip.
/// OpenMP-parallel over spin configurations.
void apply_hamiltonian(std::span<const cplx> psi, const ModelContext& ctx, double t,
                       std::span<cplx> out);
cvec apply_hamiltonian(std::span<const cplx> psi, const ModelContext& ctx, double t);

/// Straightforward serial loops over the same formulas, kept as a reference
/// for testing and benchmarking the parallel kernel.
void apply_hamiltonian_serial(std::span<const cplx> psi, const ModelContext& ctx, double t,
                              std::span<cplx> out);

/// out = H_SB,side psi (only the chosen contact's coupling term).
void apply_coupling_term(std::span<const cplx> psi, const ModelContext& ctx, Side side,
                         std::span<cplx> out);
cvec apply_coupling_term(std::span<const cplx> psi, const ModelContext& ctx, Side side);

struct SpectralBounds {
  double e_min = 0.0;
  double e_max = 0.0;
};

/// Triangle-inequality bounds enclosing the spectrum of H(t) for all t.
SpectralBounds spectral_bounds(const ModelContext& ctx);

}  // namespace ssh
