#include "liouville/groupspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liouville/error.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTolerance = 1e-10;
constexpr double kDomainSlack = 1e-12;

void require_unitary(const UnitaryOperator& u, const char* who) {
  const double defect = unitarity_defect(u);
  if (!(defect <= kUnitarityTolerance)) {
    throw Error(ErrorKind::NonUnitaryInput,
                std::string(who) + ": |U^dagger U - I| = " + std::to_string(defect));
  }
}

void require_normalized(const QuantumState& s) {
  const double dev = std::abs(s.norm_squared() - 1.0);
  if (!(dev <= kUnitarityTolerance)) {
    throw Error(ErrorKind::NotNormalized, "state norm deviates by " + std::to_string(dev));
  }
}

}  // namespace

UnitaryOperator UnitaryOperator::adjoint() const {
  UnitaryOperator r;
  r.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  return r;
}

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
  UnitaryOperator r;
  r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
  r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
  r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
  r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
  return r;
}

UnitaryOperator operator*(complex s, const UnitaryOperator& a) {
  UnitaryOperator r;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
  return r;
}

double unitarity_defect(const UnitaryOperator& u) {
  const UnitaryOperator g = u.adjoint() * u;
  return std::sqrt(std::norm(g.m[0] - 1.0) + std::norm(g.m[1]) + std::norm(g.m[2]) +
                   std::norm(g.m[3] - 1.0));
}

double frobenius_distance(const UnitaryOperator& a, const UnitaryOperator& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::norm(a.m[i] - b.m[i]);
  return std::sqrt(s);
}

UnitaryOperator polar_project(const UnitaryOperator& u) {
  UnitaryOperator x = u;
  for (int it = 0; it < 3; ++it) {
    const complex d = x.det();
    if (std::abs(d) == 0.0) {
      throw Error(ErrorKind::NonUnitaryInput, "polar_project: singular matrix");
    }
    // (X^-1)^dagger for a 2x2 matrix
    UnitaryOperator inv;
    inv.m = {x.m[3] / d, -x.m[1] / d, -x.m[2] / d, x.m[0] / d};
    const UnitaryOperator inv_adj = inv.adjoint();
    for (std::size_t i = 0; i < 4; ++i) x.m[i] = 0.5 * (x.m[i] + inv_adj.m[i]);
  }
  return x;
}

double wrap_angle(double a) {
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift for inputs just below -pi
  if (r >= kPi) r -= 2.0 * kPi;
  return r;
}

GroupCoordinates canonicalize(GroupCoordinates c) {
  if (!std::isfinite(c.phi) || !std::isfinite(c.theta) || !std::isfinite(c.omega)) {
    throw Error(ErrorKind::OutOfRange, "non-finite group coordinates");
  }
  if (c.theta < -kDomainSlack || c.theta > kPi + kDomainSlack) {
    throw Error(ErrorKind::OutOfRange, "theta outside [0, pi]");
  }
  c.theta = std::clamp(c.theta, 0.0, kPi);
  c.phi = wrap_angle(c.phi);
  c.omega = wrap_angle(c.omega);
  if (c.theta < kGimbalTolerance || kPi - c.theta < kGimbalTolerance) c.omega = 0.0;
  return c;
}

UnitaryOperator build_unitary(const GroupCoordinates& g) {
  const double c = std::cos(0.5 * g.theta);
  const double s = std::sin(0.5 * g.theta);
  UnitaryOperator u;
  u.m[0] = c * std::polar(1.0, -g.phi);
  u.m[1] = -s * std::polar(1.0, -(g.omega - g.phi));
  u.m[2] = s * std::polar(1.0, g.omega - g.phi);
  u.m[3] = c * std::polar(1.0, g.phi);
  return u;
}

UnitaryOperator to_special_unitary(const UnitaryOperator& u) {
  const complex root = std::sqrt(u.det());
  return (1.0 / root) * u;
}

GroupCoordinates decompose_unitary(const UnitaryOperator& u) {
  require_unitary(u, "decompose_unitary");
  const UnitaryOperator w = to_special_unitary(u);
  const complex a = w.m[0];
  const complex b = w.m[2];

  GroupCoordinates g;
  g.theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  if (g.theta < kGimbalTolerance) {
    g.phi = -std::arg(a);
    g.omega = 0.0;
  } else if (kPi - g.theta < kGimbalTolerance) {
    // only Omega - Phi is determined here
    g.phi = -std::arg(b);
    g.omega = 0.0;
  } else {
    g.phi = -std::arg(a);
    g.omega = std::arg(b) - std::arg(a);
  }
  return canonicalize(g);
}

double MeasureField::density(const std::array<double, 3>& x) const {
  return haar_density(*this, x);
}

double haar_density(const MeasureField& field, const std::array<double, 3>& x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::OutOfRange, "non-finite coordinate");
  }
  const auto in_circle = [](double a) { return a >= -kPi - kDomainSlack && a < kPi + kDomainSlack; };
  switch (field.group) {
    case GroupId::Su2Model: {
      const double theta = x[1];
      if (!in_circle(x[0]) || !in_circle(x[2]) || theta < -kDomainSlack ||
          theta > kPi + kDomainSlack) {
        throw Error(ErrorKind::OutOfRange, "SU2 model coordinates outside canonical box");
      }
      // sin(2 Theta) on [0, pi/2]; larger Theta folds onto pi - Theta
      const double folded = theta <= 0.5 * kPi ? theta : kPi - theta;
      return std::max(0.0, std::sin(2.0 * folded));
    }
    case GroupId::So3: {
      const double theta = x[1];
      if (!in_circle(x[0]) || !in_circle(x[2]) || theta < -kDomainSlack ||
          theta > kPi + kDomainSlack) {
        throw Error(ErrorKind::OutOfRange, "Euler angles outside canonical box");
      }
      return std::max(0.0, std::sin(std::clamp(theta, 0.0, kPi)));
    }
    case GroupId::Symplectic2D:
    case GroupId::Uniform:
      return 1.0;
  }
  return 0.0;
}

QuantumState QuantumState::normalized(complex a0, complex a1) {
  const double n = std::sqrt(std::norm(a0) + std::norm(a1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::NotNormalized, "cannot normalize a zero or non-finite state");
  }
  QuantumState s;
  s.amp = {a0 / n, a1 / n};
  return s;
}

QuantumState operator*(const UnitaryOperator& u, const QuantumState& s) {
  QuantumState r;
  r.amp[0] = u.m[0] * s.amp[0] + u.m[1] * s.amp[1];
  r.amp[1] = u.m[2] * s.amp[0] + u.m[3] * s.amp[1];
  return r;
}

double group_distance(const UnitaryOperator& u, const UnitaryOperator& v) {
  require_unitary(u, "group_distance");
  require_unitary(v, "group_distance");
  const UnitaryOperator w = u.adjoint() * v;
  const complex half_trace = 0.5 * w.trace();
  // |tr W|/2 = |cos h| and |W - tr(W)/2 I|_F / sqrt 2 = |sin h| for any global phase
  const double traceless = std::sqrt(std::norm(w.m[0] - half_trace) + std::norm(w.m[1]) +
                                     std::norm(w.m[2]) + std::norm(w.m[3] - half_trace));
  const double half_angle = std::atan2(traceless / std::numbers::sqrt2, std::abs(half_trace));
  return 2.0 * half_angle;
}

double state_distance(const QuantumState& a, const QuantumState& b) {
  require_normalized(a);
  require_normalized(b);
  const complex overlap = std::conj(a.amp[0]) * b.amp[0] + std::conj(a.amp[1]) * b.amp[1];
  const complex r0 = b.amp[0] - overlap * a.amp[0];
  const complex r1 = b.amp[1] - overlap * a.amp[1];
  const double perp = std::sqrt(std::norm(r0) + std::norm(r1));
  return std::atan2(perp, std::abs(overlap));
}

}  // namespace liouville
