#pragma once

// Reference computations used only by tests. Each one takes a route that does
// not share code paths with the library function it checks.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "liouville/groupspace.hpp"
#include "liouville/wigner.hpp"

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

/// U^n by binary exponentiation.
inline liouville::UnitaryOperator power(liouville::UnitaryOperator u, std::size_t n) {
  liouville::UnitaryOperator r = liouville::UnitaryOperator::identity();
  while (n > 0) {
    if (n & 1U) r = r * u;
    u = u * u;
    n >>= 1U;
  }
  return r;
}

/// Unitary matrix written out entry by entry from (Phi, Theta, Omega).
inline liouville::UnitaryOperator model_matrix(double phi, double theta, double omega) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  liouville::UnitaryOperator u;
  u.m = {c * std::polar(1.0, -phi), -s * std::polar(1.0, -(omega - phi)),
         s * std::polar(1.0, omega - phi), c * std::polar(1.0, phi)};
  return u;
}

/// Wigner function at one (q, p) by trapezoidal quadrature in y of
/// psi*(q - y/2) psi(q + y/2) e^{-i p y / hbar} / (2 pi hbar).
template <class Psi>
double wigner_point(const Psi& psi, double q, double p, double hbar = 1.0, double y_max = 16.0,
                    std::size_t steps = 8000) {
  const double h = 2.0 * y_max / static_cast<double>(steps);
  cplx sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double y = -y_max + h * static_cast<double>(k);
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    sum += w * std::conj(psi(q - y / 2)) * psi(q + y / 2) * std::polar(1.0, -p * y / hbar);
  }
  return (sum * h).real() / (2.0 * kPi * hbar);
}

/// Central time difference of the Wigner function along the Schroedinger flow:
/// [W(psi(+delta)) - W(psi(-delta))] / (2 delta).
inline std::vector<double> wigner_time_derivative(const liouville::WavefunctionGrid& psi,
                                                  const liouville::PotentialSpec& v, double delta,
                                                  std::size_t substeps, double mass = 1.0) {
  const double dt = delta / static_cast<double>(substeps);
  const auto fwd = liouville::wigner_transform(liouville::schrodinger_evolve(psi, v, dt, substeps, mass));
  const auto bwd = liouville::wigner_transform(liouville::schrodinger_evolve(psi, v, -dt, substeps, mass));
  std::vector<double> out(fwd.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (fwd.values[i] - bwd.values[i]) / (2.0 * delta);
  return out;
}

/// Central-difference Jacobian determinant of a map R^3 -> R^3 whose first and
/// last outputs are angles (differences wrapped into (-pi, pi]).
template <class Map>
double angle_map_jacobian(const Map& f, const std::array<double, 3>& x, double h) {
  double j[3][3];
  for (int c = 0; c < 3; ++c) {
    auto xp = x;
    auto xm = x;
    xp[c] += h;
    xm[c] -= h;
    const auto fp = f(xp);
    const auto fm = f(xm);
    for (int r = 0; r < 3; ++r) {
      double d = fp[r] - fm[r];
      if (r != 1) d = std::remainder(d, 2.0 * kPi);
      j[r][c] = d / (2.0 * h);
    }
  }
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

}  // namespace oracle
