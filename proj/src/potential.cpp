#include "ssh/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace ssh {

double diabatic_energy(double r, const DiabaticWell& well) {
  const double d = r - well.center;
  return 0.5 * well.mass * well.omega * well.omega * d * d;
}

double gaussian_coupling(double r, const GaussianCoupling& c) {
  const double d = r - c.crossing;
  return c.amplitude * std::exp(-d * d / (2.0 * c.width * c.width));
}

double adiabatic_lower(double r, const SurfaceParams& p) {
  const double vl = diabatic_energy(r, p.left);
  const double vr = diabatic_energy(r, p.right);
  const double vc = gaussian_coupling(r, p.coupling);
  const double gap = vl - vr;
  return 0.5 * (vl + vr - std::sqrt(gap * gap + 4.0 * vc * vc));
}

double coupling_window(double r, const CouplingWindow& w) {
  return w.Gamma * std::exp(-w.gamma * std::fabs(r - w.center));
}

double coupling_window_derivative(double r, const CouplingWindow& w) {
  const double d = r - w.center;
  if (d == 0.0) return 0.0;
  const double sign = d > 0.0 ? 1.0 : -1.0;
  return -w.gamma * sign * coupling_window(r, w);
}

double dipole(double r, double mu) { return mu * r; }

double find_crossing(const DiabaticWell& left, const DiabaticWell& right) {
  double a = left.center;
  double b = right.center;
  auto gap = [&](double r) { return diabatic_energy(r, left) - diabatic_energy(r, right); };
  double fa = gap(a);
  double fb = gap(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("find_crossing: diabats do not cross between the well centers");
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = gap(m);
    if (fm == 0.0 || 0.5 * (b - a) < 1e-14) return m;
    if (fa * fm < 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

void validate(const SurfaceParams& p) {
  if (!(p.left.omega > 0.0) || !(p.right.omega > 0.0))
    throw std::invalid_argument("SurfaceParams: well frequencies must be positive");
  if (!(p.left.center < p.right.center))
    throw std::invalid_argument("SurfaceParams: left well center must lie left of the right one");
  if (p.left.mass != p.right.mass)
    throw std::invalid_argument("SurfaceParams: well masses must agree");
  if (!(p.coupling.width > 0.0) || p.coupling.amplitude < 0.0)
    throw std::invalid_argument("SurfaceParams: bad Gaussian coupling");
}

void validate(const CouplingWindow& w) {
  if (!(w.gamma > 0.0) || w.Gamma < 0.0)
    throw std::invalid_argument("CouplingWindow: gamma must be positive, Gamma nonnegative");
}

}  // namespace ssh
