#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace ssh {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// In-place complex FFT over `howmany` contiguous batches of length `n`.
/// Plans are created once and may be executed concurrently.
class BatchedFft {
 public:
  BatchedFft(int n, int howmany);
  ~BatchedFft();
  BatchedFft(const BatchedFft&) = delete;
  BatchedFft& operator=(const BatchedFft&) = delete;

  void forward(cplx* data) const;
  void backward(cplx* data) const;  // unnormalized, scale by 1/n afterwards

  int length() const { return n_; }
  int batches() const { return howmany_; }

 private:
  int n_;
  int howmany_;
  void* fwd_plan_;
  void* bwd_plan_;
};

struct GridSpec {
  int n_points = 64;
  double r_min = -14.0;
  double r_max = 14.0;
  double mass = 2000.0;
};

/// Uniform periodic position grid with spectral kinetic factors k^2/2m.
/// Wavenumbers use standard DFT ordering: [0, 1, ..., n/2-1, -n/2, ..., -1]*dk.
struct Grid {
  GridSpec spec;
  double dr = 0.0;
  double dk = 0.0;
  std::vector<double> positions;
  std::vector<double> wavenumbers;
  std::vector<double> kinetic_factors;
  std::shared_ptr<const BatchedFft> fft;  // single-slice transform

  int n() const { return spec.n_points; }
  double mass() const { return spec.mass; }
};

Grid build_grid(const GridSpec& spec);

/// (P^2/2m) psi via forward transform, multiply by k^2/2m, inverse transform.
void apply_kinetic(std::span<const cplx> psi, const Grid& grid, std::span<cplx> out);
cvec apply_kinetic(std::span<const cplx> psi, const Grid& grid);

/// P psi = -i d/dr psi, spectral.
void apply_momentum(std::span<const cplx> psi, const Grid& grid, std::span<cplx> out);

}  // namespace ssh
