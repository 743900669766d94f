#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ssh/config.hpp"
#include "ssh/hamiltonian.hpp"

using namespace ssh;

namespace {

// Small composite model for dense-oracle comparisons.
ModelContext small_model(int n_grid, int n_left, int n_right, bool drive = false,
                         double big_gamma = 0.5) {
  ExperimentConfig cfg;
  cfg.grid.n_points = n_grid;
  cfg.bath_modes = n_left;  // sides share the mode count in ExperimentConfig
  cfg.drive_enabled = drive;
  cfg.drive_epsilon = drive ? 2e-4 : 0.0;
  ModelContext ctx = cfg.model(25.0, 15.0, cfg.omega_left, cfg.omega_right, big_gamma,
                               drive, cfg.drive_epsilon, {});
  (void)n_right;
  return ctx;
}

double max_abs_diff(const cvec& a, const oracle::Vec& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b(static_cast<Eigen::Index>(i))));
  return m;
}

oracle::Vec to_eigen(const cvec& v) {
  oracle::Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

TEST_CASE("apply_hamiltonian matches the dense oracle") {
  std::mt19937_64 rng(31);
  for (int n_modes : {1, 2}) {
    ModelContext ctx = small_model(8, n_modes, n_modes);
    const oracle::Mat h = oracle::dense_hamiltonian(ctx, 0.0);
    for (int rep = 0; rep < 5; ++rep) {
      cvec psi = oracle::random_state(ctx.dim(), rng);
      cvec out = apply_hamiltonian(psi, ctx, 0.0);
      CHECK(max_abs_diff(out, h * to_eigen(psi)) <= 1e-12);
    }
  }
}

TEST_CASE("apply_hamiltonian with drive matches the dense oracle at fixed t") {
  std::mt19937_64 rng(32);
  ModelContext ctx = small_model(8, 1, 1, /*drive=*/true);
  for (double t : {0.0, 137.0, 5000.0}) {
    const oracle::Mat h = oracle::dense_hamiltonian(ctx, t);
    cvec psi = oracle::random_state(ctx.dim(), rng);
    cvec out = apply_hamiltonian(psi, ctx, t);
    CHECK(max_abs_diff(out, h * to_eigen(psi)) <= 1e-12);
  }
}

TEST_CASE("serial reference agrees with the parallel kernel") {
  std::mt19937_64 rng(33);
  ModelContext ctx = small_model(16, 2, 2, /*drive=*/true);
  cvec psi = oracle::random_state(ctx.dim(), rng);
  cvec a(ctx.dim()), b(ctx.dim());
  apply_hamiltonian(psi, ctx, 42.0, a);
  apply_hamiltonian_serial(psi, ctx, 42.0, b);
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-13);
}

TEST_CASE("decoupled single-configuration slice reduces to the 1-D action") {
  ExperimentConfig cfg;
  cfg.grid.n_points = 16;
  cfg.bath_modes = 2;
  ModelContext ctx = cfg.model(25.0, 15.0, cfg.omega_left, cfg.omega_right,
                               /*Gamma=*/0.0, false, 0.0, {});
  std::mt19937_64 rng(34);
  cvec chi = oracle::random_state(16, rng);
  // populate only the all-down spin configuration
  cvec psi(ctx.dim(), cplx{0.0});
  std::copy(chi.begin(), chi.end(), psi.begin());
  cvec out = apply_hamiltonian(psi, ctx, 0.0);
  // independent 1-D oracle: dense kinetic + potential diagonal
  const oracle::Mat t1d = oracle::dense_kinetic(ctx.grid);
  oracle::Vec expected = t1d * to_eigen(chi);
  for (int i = 0; i < 16; ++i) expected(i) += ctx.potential[i] * chi[i];
  for (int i = 0; i < 16; ++i) CHECK(std::abs(psi[i] * 0.0 + out[i] - expected(i)) <= 1e-12);
  // all other slices stay empty
  for (size_t i = 16; i < ctx.dim(); ++i) CHECK(std::abs(out[i]) == 0.0);
}

TEST_CASE("Hermiticity at fixed time") {
  std::mt19937_64 rng(35);
  ModelContext ctx = small_model(8, 2, 2, /*drive=*/true);
  for (int rep = 0; rep < 10; ++rep) {
    cvec psi = oracle::random_state(ctx.dim(), rng);
    cvec phi = oracle::random_state(ctx.dim(), rng);
    cvec h_psi = apply_hamiltonian(psi, ctx, 3.0);
    cvec h_phi = apply_hamiltonian(phi, ctx, 3.0);
    cplx lhs = 0.0, rhs = 0.0;
    for (size_t i = 0; i < ctx.dim(); ++i) {
      lhs += std::conj(phi[i]) * h_psi[i];
      rhs += std::conj(h_phi[i]) * psi[i];
    }
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("apply_coupling_term: zero window, single-spin flip, dense oracle") {
  std::mt19937_64 rng(36);

  SUBCASE("zero window gives zero vector") {
    ModelContext ctx = small_model(8, 1, 1, false, /*Gamma=*/0.0);
    cvec psi = oracle::random_state(ctx.dim(), rng);
    cvec out = apply_coupling_term(psi, ctx, Side::left);
    for (const cplx& x : out) CHECK(std::abs(x) == 0.0);
  }

  SUBCASE("single sigma-plus action on a factorized state") {
    ModelContext ctx = small_model(8, 1, 1);
    cvec chi = oracle::random_state(8, rng);
    cvec psi(ctx.dim(), cplx{0.0});
    std::copy(chi.begin(), chi.end(), psi.begin());  // all spins down
    cvec out = apply_coupling_term(psi, ctx, Side::left);
    // only the left-spin-up configuration is populated: f_L(r) lambda_1 chi(r)
    const std::uint64_t up = ctx.indexer.flat(0, 1, 0);
    for (int i = 0; i < 8; ++i)
      CHECK(std::abs(out[up + i] -
                     ctx.window_left[i] * ctx.left_bath.lambdas[0] * chi[i]) <= 1e-13);
    for (size_t i = 0; i < ctx.dim(); ++i)
      if (i < up || i >= up + 8) CHECK(std::abs(out[i]) == 0.0);
  }

  SUBCASE("dense Kronecker oracle, N_r=8 with 2 spins") {
    ModelContext ctx = small_model(8, 1, 1);
    const oracle::Mat hc = oracle::dense_coupling(ctx, Side::right);
    cvec psi = oracle::random_state(ctx.dim(), rng);
    cvec out = apply_coupling_term(psi, ctx, Side::right);
    CHECK(max_abs_diff(out, hc * to_eigen(psi)) <= 1e-13);
  }
}

TEST_CASE("spectral_bounds enclose the dense spectrum") {
  ModelContext ctx = small_model(8, 1, 1, /*drive=*/true);
  const oracle::Mat h = oracle::dense_hamiltonian(ctx, 0.0);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h);
  const SpectralBounds b = spectral_bounds(ctx);
  CHECK(es.eigenvalues().minCoeff() >= b.e_min);
  CHECK(es.eigenvalues().maxCoeff() <= b.e_max);
}

TEST_CASE("spectral_bounds: decoupled diagonal-plus-kinetic case") {
  ExperimentConfig cfg;
  cfg.grid.n_points = 8;
  cfg.bath_modes = 1;
  ModelContext ctx =
      cfg.model(25.0, 15.0, cfg.omega_left, cfg.omega_right, 0.0, false, 0.0, {});
  const SpectralBounds b = spectral_bounds(ctx);
  const double v_min = *std::min_element(ctx.potential.begin(), ctx.potential.end());
  const double v_max = *std::max_element(ctx.potential.begin(), ctx.potential.end());
  const double t_max =
      *std::max_element(ctx.grid.kinetic_factors.begin(), ctx.grid.kinetic_factors.end());
  const double bath_max =
      *std::max_element(ctx.bath_energy.begin(), ctx.bath_energy.end());
  CHECK(b.e_min == doctest::Approx(v_min));
  CHECK(b.e_max == doctest::Approx(t_max + v_max + bath_max));
}

TEST_CASE("spectral_bounds monotone in drive amplitude") {
  double prev_width = 0.0;
  for (double eps : {0.0, 1e-4, 1e-3}) {
    ExperimentConfig cfg;
    cfg.grid.n_points = 8;
    cfg.bath_modes = 1;
    ModelContext ctx = cfg.model(25.0, 15.0, cfg.omega_left, cfg.omega_right, 0.5,
                                 eps > 0.0, eps, {});
    const SpectralBounds b = spectral_bounds(ctx);
    CHECK(b.e_max - b.e_min >= prev_width);
    prev_width = b.e_max - b.e_min;
  }
}

TEST_CASE("norm bound ||H psi|| <= max|bound| for random states") {
  std::mt19937_64 rng(37);
  ModelContext ctx = small_model(8, 2, 2);
  const SpectralBounds b = spectral_bounds(ctx);
  const double bound = std::max(std::fabs(b.e_min), std::fabs(b.e_max));
  for (int rep = 0; rep < 10; ++rep) {
    cvec psi = oracle::random_state(ctx.dim(), rng);
    cvec h_psi = apply_hamiltonian(psi, ctx, 0.0);
    double n = 0.0;
    for (const cplx& x : h_psi) n += std::norm(x);
    CHECK(std::sqrt(n) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("dimension mismatch rejected") {
  ModelContext ctx = small_model(8, 1, 1);
  cvec psi(7);
  CHECK_THROWS_AS(apply_hamiltonian(psi, ctx, 0.0), std::invalid_argument);
}
