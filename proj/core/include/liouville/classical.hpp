#pragma once

// Classical phase-space testbed: one-degree-of-freedom Hamiltonian flows, a
// damped non-Hamiltonian control, symplectic integration and density transport
// by the flow-Jacobian method.

#include <cstdint>
#include <vector>

namespace liouville {

struct PhaseSpacePoint {
  double p = 0.0;
  double q = 0.0;
};

enum class SystemKind { Harmonic, Quartic, Pendulum, DampedControl };

struct HamiltonianSpec {
  SystemKind kind = SystemKind::Harmonic;
  double mass = 1.0;
  double omega = 1.0;    // harmonic
  double k2 = 1.0;       // quartic: V = k2 q^2/2 + k4 q^4/4
  double k4 = 0.4;
  double length = 1.0;   // pendulum: H = p^2/(2 m l^2) + m g l (1 - cos q)
  double gravity = 1.0;
  double stiffness = 1.0;  // damped: pdot = -k q - gamma p, qdot = p/m
  double gamma = 0.5;

  static HamiltonianSpec harmonic(double m = 1.0, double omega = 1.0);
  static HamiltonianSpec quartic(double m = 1.0, double k2 = 1.0, double k4 = 0.4);
  static HamiltonianSpec pendulum(double m = 1.0, double length = 1.0, double gravity = 1.0);
  static HamiltonianSpec damped(double m = 1.0, double stiffness = 1.0, double gamma = 0.5);

  /// Throws InvalidArgument on non-positive mass, frequency etc.
  void validate() const;
  bool is_hamiltonian() const noexcept { return kind != SystemKind::DampedControl; }

  /// (pdot, qdot) at x.
  PhaseSpacePoint rates(const PhaseSpacePoint& x) const;
  /// Total energy; for the damped control the undamped oscillator energy.
  double energy(const PhaseSpacePoint& x) const;
};

struct Ensemble {
  std::vector<PhaseSpacePoint> points;
  /// Samples of the initial density, normalized to unit sum.
  std::vector<double> weights;

  /// Gaussian cloud around `center`; weights are the Gaussian density at
  /// each sample, renormalized.
  static Ensemble gaussian(std::size_t count, PhaseSpacePoint center, double sigma,
                           std::uint64_t seed);
};

inline constexpr double kDefaultTimeStep = 1e-3;
inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr std::size_t kDefaultOutputStride = 100;

/// Closed-form flow of H = p^2/2m + m w^2 q^2/2.
PhaseSpacePoint exact_harmonic_flow(const PhaseSpacePoint& x0, double t, double mass,
                                    double omega);

/// One kick-drift-kick step. Throws NonHamiltonianSystem for the damped control.
PhaseSpacePoint leapfrog_step(const PhaseSpacePoint& x, double dt, const HamiltonianSpec& h);

/// Classical RK4 step; used for the damped control.
PhaseSpacePoint rk4_step(const PhaseSpacePoint& x, double dt, const HamiltonianSpec& h);

/// Advances x by time t with ceil(t/dt) equal steps: leapfrog for Hamiltonian
/// kinds, RK4 for the damped control.
PhaseSpacePoint evolve(const PhaseSpacePoint& x, double t, double dt, const HamiltonianSpec& h);

/// d(pdot)/dp + d(qdot)/dq from the analytic equations of motion.
double divergence_field(const HamiltonianSpec& h, const PhaseSpacePoint& x);

/// Central-difference determinant of the time-t flow map at x0.
double flow_jacobian(const HamiltonianSpec& h, const PhaseSpacePoint& x0, double t,
                     double dt = kDefaultTimeStep, double fd_step = kDefaultFdStep);

struct ProbeDensity {
  PhaseSpacePoint initial;
  PhaseSpacePoint final;
  double rho0 = 0.0;
  double rho = 0.0;
  double det_jacobian = 1.0;
};

struct DensityReport {
  double time = 0.0;
  std::vector<ProbeDensity> probes;
  /// max |rho(x(t), t) - rho0(x0)| / rho0 over probes with rho0 > 0.
  double max_residual = 0.0;
  /// Same residual from k-nearest-neighbour area ratios; only filled when
  /// TransportOptions::knn_cross_check is set.
  double knn_max_residual = 0.0;
};

struct TransportOptions {
  double fd_step = kDefaultFdStep;
  bool knn_cross_check = false;
  std::size_t knn_k = 6;
};

/// Advects every ensemble sample and estimates rho = rho0 / |det J_t| along
/// each trajectory. Throws EmptyEnsemble.
DensityReport transport_density(const Ensemble& e, const HamiltonianSpec& h, double t,
                                double dt = kDefaultTimeStep, const TransportOptions& opts = {});

/// transport_density evaluated at every `stride` steps up to t (first entry at t = 0).
std::vector<DensityReport> transport_series(const Ensemble& e, const HamiltonianSpec& h, double t,
                                            double dt = kDefaultTimeStep,
                                            std::size_t stride = kDefaultOutputStride,
                                            double fd_step = kDefaultFdStep);

struct DistanceSample {
  double t = 0.0;
  double distance = 0.0;
};

/// Euclidean (p, q) distance between two trajectories every `stride` steps.
std::vector<DistanceSample> pair_distance_series(const HamiltonianSpec& h,
                                                 const PhaseSpacePoint& a,
                                                 const PhaseSpacePoint& b, double total_time,
                                                 double dt = kDefaultTimeStep,
                                                 std::size_t stride = kDefaultOutputStride);

}  // namespace liouville
