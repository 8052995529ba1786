#include <algorithm>
#include <cmath>
#include <string>

#include "liouville/error.hpp"
#include "liouville/groupspace.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSineFloor = 1e-6;

std::array<double, 3> angles_of(const EulerAngles& fixed, const std::array<double, 3>& x) {
  const auto e = euler_from_rotation(rotation_matrix(fixed) *
                                     rotation_matrix({x[0], x[1], x[2]}))
                     .angles;
  return {e.phi, e.theta, e.psi};
}

double det3(const std::array<std::array<double, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

Rotation rotation_matrix(const EulerAngles& e) {
  const double cf = std::cos(e.phi), sf = std::sin(e.phi);
  const double ct = std::cos(e.theta), st = std::sin(e.theta);
  const double cp = std::cos(e.psi), sp = std::sin(e.psi);
  return {{{cf * cp - sf * ct * sp, -cf * sp - sf * ct * cp, sf * st},
           {sf * cp + cf * ct * sp, -sf * sp + cf * ct * cp, -cf * st},
           {st * sp, st * cp, ct}}};
}

Rotation operator*(const Rotation& a, const Rotation& b) {
  Rotation r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

EulerExtraction euler_from_rotation(const Rotation& r) {
  EulerExtraction out;
  const double sin_theta = std::hypot(r[0][2], r[1][2]);
  out.angles.theta = std::atan2(sin_theta, r[2][2]);
  if (out.angles.theta < kGimbalTolerance || kPi - out.angles.theta < kGimbalTolerance) {
    // Rz(phi + psi) or Rz(phi - psi) Rx(pi): only one planar angle survives
    out.gimbal_degenerate = true;
    out.angles.phi = wrap_angle(std::atan2(r[1][0], r[0][0]));
    out.angles.psi = 0.0;
  } else {
    out.angles.phi = wrap_angle(std::atan2(r[0][2], -r[1][2]));
    out.angles.psi = wrap_angle(std::atan2(r[2][0], r[2][1]));
  }
  return out;
}

EulerAngles inverse(const EulerAngles& e) {
  // (Rz(phi) Rx(theta) Rz(psi))^T = Rz(-psi) Rx(-theta) Rz(-phi) = Rz(pi - psi) Rx(theta) Rz(pi - phi)
  return {wrap_angle(kPi - e.psi), e.theta, wrap_angle(kPi - e.phi)};
}

EulerExtraction compose_so3(const EulerAngles& a, const EulerAngles& b) {
  return euler_from_rotation(rotation_matrix(a) * rotation_matrix(b));
}

double so3_translation_jacobian(const EulerAngles& fixed, const EulerAngles& at, double step) {
  if (!(step >= 1e-6 && step <= 1e-3)) {
    throw Error(ErrorKind::InvalidArgument, "finite-difference step must lie in [1e-6, 1e-3]");
  }
  const std::array<double, 3> x{at.phi, at.theta, at.psi};
  const auto image = angles_of(fixed, x);
  if (std::sin(at.theta) <= kSineFloor || std::sin(image[1]) <= kSineFloor) {
    throw Error(ErrorKind::NearSingular,
                "sin(theta) = " + std::to_string(std::sin(at.theta)) +
                    ", sin(theta') = " + std::to_string(std::sin(image[1])));
  }

  std::array<std::array<double, 3>, 3> jac{};
  for (int col = 0; col < 3; ++col) {
    auto plus = x;
    auto minus = x;
    plus[col] += step;
    minus[col] -= step;
    const auto fp = angles_of(fixed, plus);
    const auto fm = angles_of(fixed, minus);
    jac[0][col] = wrap_angle(fp[0] - fm[0]) / (2.0 * step);
    jac[1][col] = (fp[1] - fm[1]) / (2.0 * step);
    jac[2][col] = wrap_angle(fp[2] - fm[2]) / (2.0 * step);
  }
  return det3(jac);
}

}  // namespace liouville
