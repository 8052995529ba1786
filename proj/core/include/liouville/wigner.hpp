#pragma once

// Wigner-function dynamics on a uniform grid: the discrete Wigner transform,
// a Strang split-step Schroedinger solver, the odd-order Moyal correction
// terms and the resulting compressibility metric.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "liouville/spectral.hpp"

namespace liouville {

struct WavefunctionGrid {
  double q_min = -12.0;
  double dq = 24.0 / 512.0;
  double hbar = 1.0;
  std::vector<std::complex<double>> values;

  std::size_t size() const noexcept { return values.size(); }
  double q(std::size_t i) const noexcept { return q_min + static_cast<double>(i) * dq; }
  /// sum |psi|^2 dq
  double norm() const;
  void normalize();

  /// Samples `f` on n points covering [q_min, q_max) and normalizes on the grid.
  /// Throws InvalidArgument unless n is a power of two >= 128.
  static WavefunctionGrid sample(double q_min, double q_max, std::size_t n,
                                 const std::function<std::complex<double>(double)>& f,
                                 double hbar = 1.0);

  /// Harmonic-oscillator eigenstate (level 0 or 1) for H = p^2/2m + m w^2 q^2/2.
  static WavefunctionGrid harmonic_eigenstate(int level, double mass = 1.0, double omega = 1.0,
                                              double hbar = 1.0, double q_min = -12.0,
                                              double q_max = 12.0, std::size_t n = 512);

  /// Minimum-uncertainty Gaussian with position spread sigma centred on (q0, p0).
  static WavefunctionGrid gaussian(double q0, double p0, double sigma, double hbar = 1.0,
                                   double q_min = -12.0, double q_max = 12.0,
                                   std::size_t n = 512);

  /// Coherent state of the oscillator (mass, omega): sigma^2 = hbar / (2 m w).
  static WavefunctionGrid coherent_state(double q0, double p0, double mass = 1.0,
                                         double omega = 1.0, double hbar = 1.0,
                                         double q_min = -12.0, double q_max = 12.0,
                                         std::size_t n = 512);
};

/// Quasiprobability rho_W(p, q). Layout: values[iq * n + ip], p ascending from
/// p_min with spacing dp = pi hbar / (n dq).
struct WignerGrid {
  std::size_t n = 0;
  double q_min = 0.0;
  double dq = 0.0;
  double p_min = 0.0;
  double dp = 0.0;
  double hbar = 1.0;
  std::vector<double> values;
  /// Largest |Im| of the transform before it was discarded.
  double imag_residue = 0.0;

  double q(std::size_t i) const noexcept { return q_min + static_cast<double>(i) * dq; }
  double p(std::size_t j) const noexcept { return p_min + static_cast<double>(j) * dp; }
  double& at(std::size_t iq, std::size_t ip) { return values[iq * n + ip]; }
  double at(std::size_t iq, std::size_t ip) const { return values[iq * n + ip]; }

  /// sum rho dq dp
  double total() const;
  /// sum_p rho dp for each q
  std::vector<double> q_marginal() const;
  /// sum_q rho dq for each p
  std::vector<double> p_marginal() const;
};

/// Polynomial potential V(q) = sum_i c_i q^i, degree <= 6.
struct PotentialSpec {
  std::array<double, 7> c{};

  static PotentialSpec free() { return {}; }
  static PotentialSpec harmonic(double mass = 1.0, double omega = 1.0);
  /// V = k2 q^2 / 2 + k4 q^4 / 4
  static PotentialSpec quartic(double k2 = 1.0, double k4 = 0.4);

  double value(double q) const;
  /// d^order V / dq^order at q.
  double derivative(int order, double q) const;
  /// True when the order-th derivative is the zero polynomial.
  bool derivative_vanishes(int order) const;
  int degree() const;
};

/// Discrete evaluation of rho_W(p,q) = 1/(2 pi hbar) int dy psi*(q - y/2) e^{-i p y/hbar} psi(q + y/2)
/// with y sampled at 2 dq. Throws NotNormalized or GridTooCoarse.
WignerGrid wigner_transform(const WavefunctionGrid& psi);

/// Reusable split-step propagator for a fixed grid, potential, mass and dt.
class SplitStepPropagator {
 public:
  /// Throws StabilityViolation unless |dt| max|V| / hbar < 0.1.
  SplitStepPropagator(const WavefunctionGrid& layout, const PotentialSpec& v, double dt,
                      double mass = 1.0);

  /// Applies `steps` Strang steps in place.
  void advance(WavefunctionGrid& psi, std::size_t steps) const;
  double dt() const noexcept { return dt_; }

 private:
  Fft1d fft_;
  double dt_;
  std::vector<std::complex<double>> half_potential_;
  std::vector<std::complex<double>> full_potential_;
  std::vector<std::complex<double>> kinetic_;
};

WavefunctionGrid schrodinger_evolve(const WavefunctionGrid& psi, const PotentialSpec& v, double dt,
                                    std::size_t steps, double mass = 1.0);

struct MoyalTerms {
  /// fields[i] holds the lambda = 2i+1 term, same layout as WignerGrid::values.
  std::vector<std::vector<double>> fields;

  const std::vector<double>& order(int lambda) const {
    return fields[static_cast<std::size_t>((lambda - 1) / 2)];
  }
};

/// (hbar/2i)^(lambda-1)/lambda! V^(lambda)(q) d^lambda rho_W / dp^lambda for odd
/// lambda <= lambda_max (1, 3 or 5), with spectral p-derivatives.
MoyalTerms moyal_terms(const WignerGrid& rho, const PotentialSpec& v, int lambda_max = 5);

/// -(p/m) d rho_W / dq with a spectral q-derivative.
std::vector<double> kinetic_transport(const WignerGrid& rho, double mass = 1.0);

/// sqrt(sum f^2 dq dp)
double field_norm(const WignerGrid& layout, const std::vector<double>& f);

struct CompressibilitySample {
  double t = 0.0;
  double lambda1_norm = 0.0;
  double lambda3_norm = 0.0;
  double lambda5_norm = 0.0;
  /// |lambda3 + lambda5| / |lambda1|, 0 when the higher terms vanish identically.
  double metric = 0.0;
};

struct CompressibilityReport {
  std::vector<CompressibilitySample> samples;
  double max_metric = 0.0;
};

/// Evolves psi0 to T and evaluates the Moyal terms at `samples + 1` evenly
/// spaced times.
CompressibilityReport wigner_compressibility(const WavefunctionGrid& psi0, const PotentialSpec& v,
                                             double total_time, double dt,
                                             std::size_t samples = 20, double mass = 1.0);

}  // namespace liouville
