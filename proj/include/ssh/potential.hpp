#pragma once

#include <vector>

namespace ssh {

struct DiabaticWell {
  double omega = 1e-4;   // hartree
  double center = 0.0;   // bohr
  double mass = 2000.0;  // a.u.
};

struct GaussianCoupling {
  double amplitude = 0.0;  // hartree
  double crossing = 0.0;   // bohr
  double width = 0.5;      // bohr
};

/// Semi-local system-bath window f(r) = Gamma * exp(-gamma |r - center|).
struct CouplingWindow {
  double gamma = 0.5;   // 1/bohr
  double Gamma = 0.5;   // dimensionless amplitude
  double center = 0.0;  // bohr
};

struct SurfaceParams {
  DiabaticWell left;
  DiabaticWell right;
  GaussianCoupling coupling;
  double dipole_mu = 1.0;  // a.u.
};

double diabatic_energy(double r, const DiabaticWell& well);
double gaussian_coupling(double r, const GaussianCoupling& c);

/// Lower eigenvalue of the 2x2 diabatic matrix [[V_L, V_C], [V_C, V_R]].
double adiabatic_lower(double r, const SurfaceParams& p);

double coupling_window(double r, const CouplingWindow& w);
double coupling_window_derivative(double r, const CouplingWindow& w);

double dipole(double r, double mu);

/// Root of V_L - V_R between the two well centers (bisection).
double find_crossing(const DiabaticWell& left, const DiabaticWell& right);

void validate(const SurfaceParams& p);
void validate(const CouplingWindow& w);

}  // namespace ssh
