#include "ssh/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssh {

namespace {

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return s;
}

void scale(std::span<cplx> v, double a) {
  for (cplx& x : v) x *= a;
}

}  // namespace

ChebyshevPropagator::ChebyshevPropagator(const ModelContext& ctx,
                                         const PropagatorConfig& cfg)
    : ctx_(ctx), cfg_(cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("PropagatorConfig: dt must be positive");
  if (!(cfg.tolerance > 0.0 && cfg.tolerance < 1.0))
    throw std::invalid_argument("PropagatorConfig: tolerance must be in (0,1)");
  if (cfg.max_order < 1)
    throw std::invalid_argument("PropagatorConfig: max_order must be >= 1");

  const SpectralBounds b = spectral_bounds(ctx);
  // Widen slightly so the rescaled spectrum stays strictly inside [-1, 1].
  e_mid_ = 0.5 * (b.e_max + b.e_min);
  e_half_ = 0.5 * (b.e_max - b.e_min) * 1.01;
  alpha_ = e_half_ * cfg.dt;

  // Truncate once the Bessel tail is below tolerance and stays there.
  coeffs_.clear();
  const cplx phase = std::polar(1.0, -e_mid_ * cfg.dt);
  int k = 0;
  int below = 0;
  while (true) {
    const double jk = std::cyl_bessel_j(k, alpha_);
    static constexpr cplx minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    const cplx mik = minus_i_pow[k % 4];  // (-i)^k
    coeffs_.push_back(phase * ((k == 0 ? 1.0 : 2.0) * jk) * mik);
    if (k > alpha_ && std::fabs(jk) < cfg.tolerance) {
      if (++below >= 2) break;
    } else {
      below = 0;
    }
    if (++k > cfg.max_order)
      throw std::runtime_error(
          "ChebyshevPropagator: expansion order exceeded max_order; reduce dt");
  }
  order_ = static_cast<int>(coeffs_.size()) - 1;

  work0_.resize(ctx.dim());
  work1_.resize(ctx.dim());
  work2_.resize(ctx.dim());
}

void ChebyshevPropagator::step(std::span<cplx> psi, double t) {
  if (psi.size() != ctx_.dim())
    throw std::invalid_argument("ChebyshevPropagator::step: length mismatch");
  const double t_mid = t + 0.5 * cfg_.dt;
  const std::int64_t dim = static_cast<std::int64_t>(ctx_.dim());

  // phi_0 = psi, phi_1 = H_n psi, phi_{k+1} = 2 H_n phi_k - phi_{k-1}
  std::copy(psi.begin(), psi.end(), work0_.begin());
  apply_hamiltonian(work0_, ctx_, t_mid, work1_);
  const double inv_half = 1.0 / e_half_;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i)
    work1_[i] = (work1_[i] - e_mid_ * work0_[i]) * inv_half;

  const cplx c0 = coeffs_[0];
  const cplx c1 = coeffs_.size() > 1 ? coeffs_[1] : cplx{0.0};
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) psi[i] = c0 * work0_[i] + c1 * work1_[i];

  for (size_t k = 2; k < coeffs_.size(); ++k) {
    apply_hamiltonian(work1_, ctx_, t_mid, work2_);
    const cplx ck = coeffs_[k];
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
      const cplx next = 2.0 * (work2_[i] - e_mid_ * work1_[i]) * inv_half - work0_[i];
      work0_[i] = work1_[i];
      work1_[i] = next;
      psi[i] += ck * next;
    }
  }
}

GroundStateResult imaginary_time_relax(std::span<const cplx> psi0, const Grid& grid,
                                       std::span<const double> potential,
                                       const RelaxationConfig& cfg) {
  const int n = grid.n();
  if (static_cast<int>(psi0.size()) != n || static_cast<int>(potential.size()) != n)
    throw std::invalid_argument("imaginary_time_relax: length mismatch");

  double v_min = potential[0], v_max = potential[0];
  for (double v : potential) {
    v_min = std::min(v_min, v);
    v_max = std::max(v_max, v);
  }
  const double t_max =
      *std::max_element(grid.kinetic_factors.begin(), grid.kinetic_factors.end());
  const double e_mid = 0.5 * (v_max + t_max + v_min);
  const double e_half = 0.5 * (v_max + t_max - v_min) * 1.01;

  const double tau = cfg.tau > 0.0 ? cfg.tau : 20.0 / e_half;
  const double beta = e_half * tau;

  // exp(-beta x) on [-1,1]: I_0(beta) + 2 sum_k (-1)^k I_k(beta) T_k(x),
  // scaled by exp(-beta) to keep the coefficients bounded.
  std::vector<double> coeffs;
  {
    int k = 0;
    while (true) {
      const double ik = std::cyl_bessel_i(k, beta) * std::exp(-beta);
      const double c = (k == 0 ? 1.0 : 2.0) * ik * (k % 2 == 0 ? 1.0 : -1.0);
      coeffs.push_back(c);
      if (k > beta && std::fabs(ik) < 1e-16) break;
      if (++k > 100000)
        throw std::runtime_error("imaginary_time_relax: coefficient series too long");
    }
  }

  auto apply_h = [&](std::span<const cplx> in, std::span<cplx> out) {
    apply_kinetic(in, grid, out);
    for (int i = 0; i < n; ++i) out[i] += potential[i] * in[i];
  };
  auto energy_of = [&](std::span<const cplx> v) {
    cvec hv(n);
    apply_h(v, hv);
    cplx e = 0.0;
    for (int i = 0; i < n; ++i) e += std::conj(v[i]) * hv[i];
    return e.real();
  };

  cvec psi(psi0.begin(), psi0.end());
  scale(psi, 1.0 / std::sqrt(norm2(psi)));
  double energy = energy_of(psi);

  cvec phi0(n), phi1(n), phi2(n), acc(n);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    // acc = exp(-H tau) psi via the Chebyshev series
    phi0 = psi;
    apply_h(phi0, phi1);
    for (int i = 0; i < n; ++i) phi1[i] = (phi1[i] - e_mid * phi0[i]) / e_half;
    for (int i = 0; i < n; ++i) acc[i] = coeffs[0] * phi0[i] + coeffs[1] * phi1[i];
    for (size_t k = 2; k < coeffs.size(); ++k) {
      apply_h(phi1, phi2);
      for (int i = 0; i < n; ++i) {
        const cplx next = 2.0 * (phi2[i] - e_mid * phi1[i]) / e_half - phi0[i];
        phi0[i] = phi1[i];
        phi1[i] = next;
        acc[i] += coeffs[k] * next;
      }
    }
    const double nrm = norm2(acc);
    if (!(nrm > 0.0))
      throw std::runtime_error("imaginary_time_relax: state vanished; bad start vector");
    psi = acc;
    scale(psi, 1.0 / std::sqrt(nrm));
    const double e_new = energy_of(psi);
    if (std::fabs(e_new - energy) < cfg.energy_tol) {
      return {std::move(psi), e_new, it + 1};
    }
    energy = e_new;
  }
  throw std::runtime_error("imaginary_time_relax: no convergence within iteration cap");
}

}  // namespace ssh
