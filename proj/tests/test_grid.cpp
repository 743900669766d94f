#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ssh/grid.hpp"

using namespace ssh;
using std::numbers::pi;

TEST_CASE("build_grid: DFT ordering and spacings") {
  Grid g = build_grid({.n_points = 8, .r_min = 0.0, .r_max = 8.0, .mass = 1.0});
  CHECK(g.dr == doctest::Approx(1.0));
  CHECK(g.dk == doctest::Approx(2.0 * pi / 8.0));
  // dr * dk * N = 2 pi to machine precision
  CHECK(g.dr * g.dk * 8 == doctest::Approx(2.0 * pi).epsilon(1e-15));
  CHECK(g.positions[0] == 0.0);
  CHECK(g.positions[3] == 3.0);
  // standard ordering: [0, 1, 2, 3, -4, -3, -2, -1] * dk
  CHECK(g.wavenumbers[1] == doctest::Approx(g.dk));
  CHECK(g.wavenumbers[4] == doctest::Approx(-4 * g.dk));
  CHECK(g.wavenumbers[7] == doctest::Approx(-g.dk));
}

TEST_CASE("build_grid: symmetric box") {
  Grid g = build_grid({.n_points = 8, .r_min = -4.0, .r_max = 4.0, .mass = 1.0});
  CHECK(g.dr == doctest::Approx(1.0));
  CHECK(g.dk == doctest::Approx(2.0 * pi / 8.0));
}

TEST_CASE("build_grid: max kinetic factor closed form") {
  Grid g = build_grid({.n_points = 64, .r_min = -6.0, .r_max = 6.0, .mass = 2000.0});
  double max_kf = 0.0;
  for (double k : g.kinetic_factors) max_kf = std::max(max_kf, k);
  const double expected = std::pow(pi / g.dr, 2) / (2.0 * 2000.0);
  CHECK(max_kf == doctest::Approx(expected).epsilon(1e-12));
  // nonnegative and symmetric under k -> -k
  for (int i = 1; i < 64; ++i) {
    CHECK(g.kinetic_factors[i] >= 0.0);
    CHECK(g.kinetic_factors[i] == doctest::Approx(g.kinetic_factors[64 - i]));
  }
}

TEST_CASE("build_grid: invalid specs rejected") {
  CHECK_THROWS_AS(build_grid({.n_points = 48}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid({.n_points = 4}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid({.n_points = 16, .r_min = 2.0, .r_max = -2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid({.n_points = 16, .r_min = 0.0, .r_max = 1.0, .mass = -1.0}),
                  std::invalid_argument);
}

TEST_CASE("apply_kinetic: plane waves are eigenvectors") {
  Grid g = build_grid({.n_points = 32, .r_min = -4.0, .r_max = 4.0, .mass = 3.0});
  for (int j : {0, 1, 5, 16, 31}) {
    cvec psi(32);
    for (int i = 0; i < 32; ++i)
      psi[i] = std::polar(1.0, g.wavenumbers[j] * g.positions[i]);
    cvec t = apply_kinetic(psi, g);
    const double ev = g.kinetic_factors[j];
    for (int i = 0; i < 32; ++i) {
      CHECK(std::abs(t[i] - ev * psi[i]) <= 1e-12 * std::max(1.0, std::abs(ev)));
    }
  }
}

TEST_CASE("apply_kinetic: constant maps to zero") {
  Grid g = build_grid({.n_points = 16, .r_min = -2.0, .r_max = 2.0, .mass = 1.0});
  cvec psi(16, cplx{0.7, -0.1});
  cvec t = apply_kinetic(psi, g);
  for (const cplx& x : t) CHECK(std::abs(x) <= 1e-13);
}

TEST_CASE("apply_kinetic: Gaussian matches finite-difference oracle") {
  Grid g = build_grid({.n_points = 128, .r_min = -8.0, .r_max = 8.0, .mass = 1.0});
  cvec psi(128);
  for (int i = 0; i < 128; ++i)
    psi[i] = std::exp(-0.5 * g.positions[i] * g.positions[i]);
  cvec spectral = apply_kinetic(psi, g);
  cvec d2 = oracle::fd_second_derivative(psi, g.dr);
  for (int i = 0; i < 128; ++i) {
    const cplx expected = -0.5 * d2[i] / g.mass();
    CHECK(std::abs(spectral[i] - expected) <= 1e-8);
  }
}

TEST_CASE("apply_kinetic: Hermitian on random states") {
  Grid g = build_grid({.n_points = 64, .r_min = -5.0, .r_max = 5.0, .mass = 2.5});
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    cvec psi = oracle::random_state(64, rng);
    cvec phi = oracle::random_state(64, rng);
    cvec t_psi = apply_kinetic(psi, g);
    cvec t_phi = apply_kinetic(phi, g);
    cplx lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < 64; ++i) {
      lhs += std::conj(phi[i]) * t_psi[i];
      rhs += std::conj(t_phi[i]) * psi[i];
    }
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("apply_kinetic: normalized Gaussian mean kinetic energy") {
  // <T> = 1/(8 m sigma^2) for exp(-r^2 / 4 sigma^2), position spread sigma.
  Grid g = build_grid({.n_points = 256, .r_min = -10.0, .r_max = 10.0, .mass = 2.0});
  const double sigma = 0.8;
  cvec psi(256);
  double nrm = 0.0;
  for (int i = 0; i < 256; ++i) {
    psi[i] = std::exp(-g.positions[i] * g.positions[i] / (4.0 * sigma * sigma));
    nrm += std::norm(psi[i]);
  }
  for (auto& x : psi) x /= std::sqrt(nrm);
  cvec t = apply_kinetic(psi, g);
  double mean_t = 0.0;
  for (int i = 0; i < 256; ++i) mean_t += (std::conj(psi[i]) * t[i]).real();
  CHECK(mean_t == doctest::Approx(1.0 / (8.0 * 2.0 * sigma * sigma)).epsilon(1e-6));
}

TEST_CASE("apply_kinetic: length mismatch rejected") {
  Grid g = build_grid({.n_points = 16, .r_min = -2.0, .r_max = 2.0, .mass = 1.0});
  cvec psi(8);
  CHECK_THROWS_AS(apply_kinetic(psi, g), std::invalid_argument);
}

TEST_CASE("apply_momentum: plane wave eigenvalue") {
  Grid g = build_grid({.n_points = 32, .r_min = -4.0, .r_max = 4.0, .mass = 1.0});
  cvec psi(32);
  for (int i = 0; i < 32; ++i)
    psi[i] = std::polar(1.0, g.wavenumbers[3] * g.positions[i]);
  cvec p(32);
  apply_momentum(psi, g, p);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(p[i] - g.wavenumbers[3] * psi[i]) <= 1e-12);
}
