#pragma once

// Parameterizations, Haar densities and invariant metrics for SU(2) in the
// (Phi, Theta, Omega) model coordinates and SO(3) in z-x-z Euler angles.

#include <array>
#include <complex>
#include <numbers>

namespace liouville {

using complex = std::complex<double>;

/// 2x2 complex matrix, row-major. Not checked for unitarity on construction;
/// operations that need it validate with `unitarity_defect`.
struct UnitaryOperator {
  std::array<complex, 4> m{complex{1.0}, complex{}, complex{}, complex{1.0}};

  complex& operator()(int row, int col) { return m[static_cast<std::size_t>(2 * row + col)]; }
  const complex& operator()(int row, int col) const {
    return m[static_cast<std::size_t>(2 * row + col)];
  }

  static UnitaryOperator identity() { return {}; }

  complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  complex trace() const { return m[0] + m[3]; }
  UnitaryOperator adjoint() const;
};

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b);
UnitaryOperator operator*(complex s, const UnitaryOperator& a);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const UnitaryOperator& u);

/// Frobenius norm of a - b.
double frobenius_distance(const UnitaryOperator& a, const UnitaryOperator& b);

/// Nearest unitary matrix (polar factor) via Newton iteration X <- (X + X^-dagger)/2.
UnitaryOperator polar_project(const UnitaryOperator& u);

/// Group element location (Phi, Theta, Omega). Canonical ranges are
/// Phi in [-pi, pi), Theta in [0, pi], Omega in [-pi, pi); at Theta in {0, pi}
/// Omega is gauge and stored as 0.
struct GroupCoordinates {
  double phi = 0.0;
  double theta = 0.0;
  double omega = 0.0;
};

/// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

/// Returns the canonical representative of `c`; throws OutOfRange when theta is
/// outside [0, pi] by more than rounding.
GroupCoordinates canonicalize(GroupCoordinates c);

UnitaryOperator build_unitary(const GroupCoordinates& coords);

/// Tolerance within which Theta counts as a gauge point (Omega is reset to 0).
inline constexpr double kGimbalTolerance = 1e-8;

/// Inverse of `build_unitary` up to a global phase. Throws NonUnitaryInput
/// when the input deviates from unitarity by more than 1e-10.
GroupCoordinates decompose_unitary(const UnitaryOperator& u);

/// Divides out sqrt(det U) so the result lies in SU(2).
UnitaryOperator to_special_unitary(const UnitaryOperator& u);

enum class GroupId { Su2Model, So3, Symplectic2D, Uniform };

/// Coordinates for a density query. For Su2Model the triple is
/// (Phi, Theta, Omega); for So3 it is (phi, theta, psi); for the 2D fields only
/// the first two entries (p, q) are read.
struct MeasureField {
  GroupId group = GroupId::Uniform;

  /// Non-negative measure density at `x`. Throws OutOfRange outside the
  /// canonical domain of the field.
  double density(const std::array<double, 3>& x) const;
};

double haar_density(const MeasureField& field, const std::array<double, 3>& x);

/// Normalized two-level state.
struct QuantumState {
  std::array<complex, 2> amp{complex{1.0}, complex{}};

  static QuantumState ground() { return {}; }
  static QuantumState normalized(complex a0, complex a1);
  double norm_squared() const { return std::norm(amp[0]) + std::norm(amp[1]); }
};

QuantumState operator*(const UnitaryOperator& u, const QuantumState& s);

/// Bi-invariant distance on the projective unitary group: the Bloch rotation
/// angle of U^dagger V, in [0, pi]. Global phases are quotiented out.
double group_distance(const UnitaryOperator& u, const UnitaryOperator& v);

/// Fubini-Study angle arccos|<a|b>| in [0, pi/2].
double state_distance(const QuantumState& a, const QuantumState& b);

// ---------------------------------------------------------------------------
// SO(3)

struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

using Rotation = std::array<std::array<double, 3>, 3>;

/// R = Rz(phi) Rx(theta) Rz(psi).
Rotation rotation_matrix(const EulerAngles& e);
Rotation operator*(const Rotation& a, const Rotation& b);

struct EulerExtraction {
  EulerAngles angles;
  /// Set when theta is within kGimbalTolerance of 0 or pi; psi is then 0.
  bool gimbal_degenerate = false;
};

EulerExtraction euler_from_rotation(const Rotation& r);

EulerAngles inverse(const EulerAngles& e);

EulerExtraction compose_so3(const EulerAngles& a, const EulerAngles& b);

inline constexpr double kDefaultJacobianStep = 1e-5;

/// Central-difference determinant of (phi, theta, psi) -> angles(fixed * R(phi, theta, psi))
/// evaluated at `at`. Throws NearSingular if sin(theta) or sin(theta') <= 1e-6,
/// InvalidArgument if `step` is outside [1e-6, 1e-3].
double so3_translation_jacobian(const EulerAngles& fixed, const EulerAngles& at,
                                double step = kDefaultJacobianStep);

}  // namespace liouville
