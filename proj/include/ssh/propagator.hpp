#pragma once

#include <span>

#include "ssh/hamiltonian.hpp"

namespace ssh {

struct PropagatorConfig {
  double dt = 0.25;          // a.u.
  double tolerance = 1e-12;  // coefficient truncation threshold
  int max_order = 4096;
};

/// Chebyshev expansion of exp(-i H dt) on the spectrally rescaled Hamiltonian.
/// Explicit time dependence is frozen at the step midpoint.
class ChebyshevPropagator {
 public:
  ChebyshevPropagator(const ModelContext& ctx, const PropagatorConfig& cfg);

  /// psi <- exp(-i H(t + dt/2) dt) psi
  void step(std::span<cplx> psi, double t);

  int order() const { return order_; }
  const PropagatorConfig& config() const { return cfg_; }

 private:
  const ModelContext& ctx_;
  PropagatorConfig cfg_;
  double e_mid_;    // spectral center
  double e_half_;   // spectral half-width
  double alpha_;    // e_half * dt
  int order_;
  std::vector<cplx> coeffs_;  // (2 - delta_k0) (-i)^k J_k(alpha), with phase folded in
  cvec work0_, work1_, work2_;
};

struct GroundStateResult {
  cvec psi;        // normalized, length N_r (system only)
  double energy;   // hartree
  int iterations;
};

struct RelaxationConfig {
  double tau = 0.0;             // imaginary-time step; 0 picks one from the spectral width
  double energy_tol = 1e-10;    // hartree, convergence on the Rayleigh quotient
  int max_iterations = 20000;
};

/// Imaginary-time relaxation of the bare system (kinetic + adiabatic potential)
/// from a supplied start vector. Bath and drive play no part.
GroundStateResult imaginary_time_relax(std::span<const cplx> psi0, const Grid& grid,
                                       std::span<const double> potential,
                                       const RelaxationConfig& cfg = {});

}  // namespace ssh
