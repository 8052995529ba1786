#pragma once

// Orbits of U^n in group-parameter space and their occupancy statistics
// against the invariant measure of the orbit closure.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "liouville/groupspace.hpp"

namespace liouville {

struct OrbitRecord {
  std::size_t n = 0;
  GroupCoordinates coords;
  QuantumState state;
};

inline constexpr std::size_t kReunitarizeEvery = 1024;
inline constexpr std::size_t kMaxOrbitLength = 10'000'000;
inline constexpr std::size_t kDefaultBins = 20;

/// Calls `visit(record, power)` for n = 0..n_max with power = U^n in SU(2).
/// The running power is polar-projected every kReunitarizeEvery products.
void for_each_orbit_element(
    const UnitaryOperator& u, std::size_t n_max,
    const std::function<void(const OrbitRecord&, const UnitaryOperator&)>& visit);

/// Records for n = 0..n_max. Throws NonUnitaryInput, InvalidArgument if n_max > 1e7.
std::vector<OrbitRecord> iterate_orbit(const UnitaryOperator& u, std::size_t n_max);

/// Closure of {base * U^n}: a circle base * (cos t I + sin t K), or a finite
/// cyclic set when the rotation angle is a rational multiple of 2 pi.
class OrbitClosure {
 public:
  /// `base` is the first orbit element (identity for a plain orbit).
  static OrbitClosure of(const UnitaryOperator& generator,
                         const UnitaryOperator& base = UnitaryOperator::identity(),
                         std::size_t max_period = 4096);

  /// Uses orbit[0] as base and orbit[0]^-1 orbit[1] as generator.
  static OrbitClosure from_orbit(const std::vector<OrbitRecord>& orbit,
                                 std::size_t max_period = 4096);

  /// Rotation angle beta in [0, pi]: eigenvalues of the SU(2) generator are e^{+-i beta}.
  double rotation_angle() const noexcept { return beta_; }
  /// Smallest Q with U^Q = I in SU(2), or 0 when none up to max_period.
  std::size_t period() const noexcept { return period_; }
  bool degenerate() const noexcept { return degenerate_; }

  /// base * (cos t I + sin t K)
  UnitaryOperator element(double t) const;
  /// Angle t in [0, 2 pi) of an element of the closure.
  double angle_of(const UnitaryOperator& m) const;

 private:
  UnitaryOperator base_;
  UnitaryOperator base_inv_;
  UnitaryOperator axis_;  // K, K^2 = -I
  double beta_ = 0.0;
  std::size_t period_ = 0;
  bool degenerate_ = false;
};

/// Bin index of a coordinate in [lo, lo + bins*width); points within 1e-9 of a
/// bin edge go to the upper bin. `periodic` wraps, otherwise clamps.
std::size_t bin_index(double x, double lo, double width, std::size_t bins, bool periodic);

struct HaarHistogram {
  std::size_t bins_per_axis = kDefaultBins;
  std::uint64_t samples = 0;
  /// Flattened [phi][theta][omega], Theta binned over [0, pi].
  std::vector<std::uint64_t> counts;
  /// Invariant (Haar) mass of the orbit closure falling in each bin; sums to 1.
  std::vector<double> haar_weights;
  /// Mass of the SU2 model density sin(2 Theta) (folded) over each box, for reference.
  std::vector<double> ambient_mass;
  std::vector<double> normalized_occupancy;
  std::vector<bool> achievable_mask;
  double flatness = 0.0;

  std::size_t index(std::size_t i_phi, std::size_t i_theta, std::size_t i_omega) const noexcept {
    return (i_phi * bins_per_axis + i_theta) * bins_per_axis + i_omega;
  }
  std::size_t achievable_bins() const;
};

/// 3D occupancy over (Phi, Theta, Omega) normalized by the closure's Haar mass
/// per bin. Throws TooFewSamples below 1000 records.
HaarHistogram haar_histogram(const std::vector<OrbitRecord>& orbit,
                             std::size_t bins = kDefaultBins);

struct AngleHistogram {
  std::vector<std::uint64_t> counts;
  std::vector<double> mass;
  std::vector<double> normalized_occupancy;
  std::uint64_t samples = 0;
  double flatness = 0.0;
  bool low_sample = false;
};

/// Histogram of the orbit angle n*beta mod 2 pi (uniform invariant measure).
AngleHistogram orbit_angle_histogram(const std::vector<OrbitRecord>& orbit,
                                     std::size_t bins = kDefaultBins);

struct ControlHistogram {
  std::vector<std::uint64_t> counts;
  /// CV of raw counts over uniform bins in cos(angle); no invariant weight.
  double flatness = 0.0;
  /// CV after dividing by the push-forward (arcsine) mass of each bin.
  double weighted_flatness = 0.0;
  bool degenerate = false;
};

/// cos(orbit angle) against naive uniform bins on [-1, 1].
ControlHistogram non_invariant_control(const std::vector<OrbitRecord>& orbit,
                                       std::size_t bins = kDefaultBins);

/// Streaming accumulator for the 1D statistics; used for long runs where the
/// record list is not materialized.
class AngleAccumulator {
 public:
  explicit AngleAccumulator(std::size_t bins = kDefaultBins);

  void add(double angle);
  AngleHistogram angle_histogram() const;
  ControlHistogram control_histogram() const;
  std::uint64_t samples() const noexcept { return samples_; }

 private:
  std::size_t bins_;
  std::uint64_t samples_ = 0;
  std::vector<std::uint64_t> angle_counts_;
  std::vector<std::uint64_t> cos_counts_;
};

struct FlatnessPoint {
  std::uint64_t n = 0;
  double flatness_haar = 0.0;
  double flatness_control = 0.0;
};

/// Orbit-angle and control flatness of U^0..U^(c-1) at each checkpoint c.
std::vector<FlatnessPoint> flatness_series(const UnitaryOperator& u,
                                           const std::vector<std::uint64_t>& checkpoints,
                                           std::size_t bins = kDefaultBins);

}  // namespace liouville
