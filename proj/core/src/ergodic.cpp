#include "liouville/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liouville/error.hpp"
#include "liouville/numerics.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEdgeSnap = 1e-9;
constexpr double kPeriodTolerance = 1e-9;
constexpr std::size_t kCircleSamples = std::size_t{1} << 20;
constexpr std::size_t kMinHistogramSamples = 1000;

struct SplitSu2 {
  double cos_part;   // Re tr(W) / 2
  double sin_part;   // |W - cos I|_F / sqrt 2
};

SplitSu2 split(const UnitaryOperator& w) {
  const double c = 0.5 * w.trace().real();
  const complex half_trace = 0.5 * w.trace();
  const double s = std::sqrt(std::norm(w.m[0] - half_trace) + std::norm(w.m[1]) +
                             std::norm(w.m[2]) + std::norm(w.m[3] - half_trace)) /
                   std::numbers::sqrt2;
  return {c, s};
}

std::vector<double> occupancy_over(const std::vector<std::uint64_t>& counts,
                                   const std::vector<double>& mass, std::uint64_t samples,
                                   std::vector<double>& achievable) {
  std::vector<double> occ(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    occ[i] = (static_cast<double>(counts[i]) / static_cast<double>(samples)) / mass[i];
    achievable.push_back(occ[i]);
  }
  return occ;
}

std::array<std::size_t, 3> bin3(const GroupCoordinates& g, std::size_t bins) {
  const double w = kTwoPi / static_cast<double>(bins);
  const double wt = kPi / static_cast<double>(bins);
  return {bin_index(g.phi, -kPi, w, bins, true), bin_index(g.theta, 0.0, wt, bins, false),
          bin_index(g.omega, -kPi, w, bins, true)};
}

}  // namespace

void for_each_orbit_element(
    const UnitaryOperator& u, std::size_t n_max,
    const std::function<void(const OrbitRecord&, const UnitaryOperator&)>& visit) {
  if (n_max > kMaxOrbitLength) {
    throw Error(ErrorKind::InvalidArgument, "n_max exceeds " + std::to_string(kMaxOrbitLength));
  }
  if (unitarity_defect(u) > 1e-10) {
    throw Error(ErrorKind::NonUnitaryInput, "iterate_orbit generator is not unitary");
  }
  const UnitaryOperator g = to_special_unitary(u);
  UnitaryOperator power = UnitaryOperator::identity();
  const QuantumState ground = QuantumState::ground();
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      power = g * power;
      if (n % kReunitarizeEvery == 0) power = polar_project(power);
    }
    OrbitRecord rec;
    rec.n = n;
    rec.coords = decompose_unitary(power);
    rec.state = power * ground;
    visit(rec, power);
  }
}

std::vector<OrbitRecord> iterate_orbit(const UnitaryOperator& u, std::size_t n_max) {
  std::vector<OrbitRecord> out;
  out.reserve(std::min(n_max, kMaxOrbitLength) + 1);
  for_each_orbit_element(u, n_max,
                         [&](const OrbitRecord& r, const UnitaryOperator&) { out.push_back(r); });
  return out;
}

OrbitClosure OrbitClosure::of(const UnitaryOperator& generator, const UnitaryOperator& base,
                              std::size_t max_period) {
  OrbitClosure c;
  c.base_ = base;
  c.base_inv_ = base.adjoint();
  const UnitaryOperator g = to_special_unitary(generator);
  const auto [cos_part, sin_part] = split(g);
  c.beta_ = std::atan2(sin_part, cos_part);
  if (sin_part < 1e-12) {
    c.degenerate_ = true;
    c.axis_.m = {complex{}, complex{}, complex{}, complex{}};
    c.period_ = cos_part > 0.0 ? 1 : 2;
    return c;
  }
  c.axis_ = g;
  c.axis_.m[0] -= cos_part;
  c.axis_.m[3] -= cos_part;
  c.axis_ = complex(1.0 / sin_part) * c.axis_;
  for (std::size_t q = 1; q <= max_period; ++q) {
    const double turns = static_cast<double>(q) * c.beta_ / kTwoPi;
    if (std::abs(turns - std::round(turns)) * kTwoPi < kPeriodTolerance) {
      c.period_ = q;
      break;
    }
  }
  return c;
}

OrbitClosure OrbitClosure::from_orbit(const std::vector<OrbitRecord>& orbit,
                                      std::size_t max_period) {
  if (orbit.size() < 2) throw Error(ErrorKind::TooFewSamples, "orbit needs at least two records");
  const UnitaryOperator first = build_unitary(orbit[0].coords);
  const UnitaryOperator second = build_unitary(orbit[1].coords);
  return of(first.adjoint() * second, first, max_period);
}

UnitaryOperator OrbitClosure::element(double t) const {
  UnitaryOperator m;
  if (degenerate_) {
    m = complex(std::cos(t)) * UnitaryOperator::identity();
  } else {
    for (std::size_t i = 0; i < 4; ++i) m.m[i] = std::sin(t) * axis_.m[i];
    m.m[0] += std::cos(t);
    m.m[3] += std::cos(t);
  }
  return base_ * m;
}

double OrbitClosure::angle_of(const UnitaryOperator& mat) const {
  const UnitaryOperator local = base_inv_ * mat;
  double t;
  if (degenerate_) {
    t = local.trace().real() >= 0.0 ? 0.0 : kPi;
  } else {
    // cos t = Re tr(M)/2, sin t = Re tr(K^dagger M)/2
    const double c = 0.5 * local.trace().real();
    const double s = 0.5 * (axis_.adjoint() * local).trace().real();
    t = std::atan2(s, c);
  }
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

std::size_t bin_index(double x, double lo, double width, std::size_t bins, bool periodic) {
  const double raw = std::floor((x - lo) / width + kEdgeSnap);
  if (periodic) {
    const auto b = static_cast<long long>(bins);
    long long i = static_cast<long long>(raw) % b;
    if (i < 0) i += b;
    return static_cast<std::size_t>(i);
  }
  if (raw < 0.0) return 0;
  return std::min(static_cast<std::size_t>(raw), bins - 1);
}

std::size_t HaarHistogram::achievable_bins() const {
  return static_cast<std::size_t>(std::count(achievable_mask.begin(), achievable_mask.end(), true));
}

HaarHistogram haar_histogram(const std::vector<OrbitRecord>& orbit, std::size_t bins) {
  if (orbit.size() < kMinHistogramSamples) {
    throw Error(ErrorKind::TooFewSamples,
                "haar_histogram needs >= 1000 records, got " + std::to_string(orbit.size()));
  }
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
  const std::size_t total_bins = bins * bins * bins;

  HaarHistogram h;
  h.bins_per_axis = bins;
  h.samples = orbit.size();
  h.counts.assign(total_bins, 0);
  for (const auto& rec : orbit) {
    const auto [i, j, k] = bin3(rec.coords, bins);
    ++h.counts[h.index(i, j, k)];
  }

  // Haar measure of the closure: counting measure on a cyclic set, arc length on a circle.
  const OrbitClosure closure = OrbitClosure::from_orbit(orbit);
  const std::size_t points = closure.period() > 0 ? closure.period() : kCircleSamples;
  h.haar_weights.assign(total_bins, 0.0);
  for (std::size_t s = 0; s < points; ++s) {
    const double t = kTwoPi * static_cast<double>(s) / static_cast<double>(points);
    const auto [i, j, k] = bin3(decompose_unitary(closure.element(t)), bins);
    h.haar_weights[h.index(i, j, k)] += 1.0;
  }
  for (double& w : h.haar_weights) w /= static_cast<double>(points);

  // reference: folded sin(2 Theta) mass per box
  h.ambient_mass.assign(total_bins, 0.0);
  const double wt = kPi / static_cast<double>(bins);
  const double wa = kTwoPi / static_cast<double>(bins);
  const MeasureField su2{GroupId::Su2Model};
  for (std::size_t j = 0; j < bins; ++j) {
    const double theta_mass = adaptive_simpson(
        [&](double th) { return haar_density(su2, {0.0, th, 0.0}); }, wt * static_cast<double>(j),
        wt * static_cast<double>(j + 1), 1e-13);
    for (std::size_t i = 0; i < bins; ++i)
      for (std::size_t k = 0; k < bins; ++k) h.ambient_mass[h.index(i, j, k)] = theta_mass * wa * wa;
  }

  h.normalized_occupancy.assign(total_bins, 0.0);
  h.achievable_mask.assign(total_bins, false);
  std::vector<double> achievable;
  const double floor_mass = 1.0 / static_cast<double>(points);
  for (std::size_t b = 0; b < total_bins; ++b) {
    if (h.counts[b] == 0) continue;
    h.achievable_mask[b] = true;
    const double mass = std::max(h.haar_weights[b], floor_mass);
    h.normalized_occupancy[b] =
        (static_cast<double>(h.counts[b]) / static_cast<double>(h.samples)) / mass;
    achievable.push_back(h.normalized_occupancy[b]);
  }
  h.flatness = coefficient_of_variation(achievable);
  return h;
}

AngleAccumulator::AngleAccumulator(std::size_t bins)
    : bins_(bins), angle_counts_(bins, 0), cos_counts_(bins, 0) {
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
}

void AngleAccumulator::add(double angle) {
  ++samples_;
  ++angle_counts_[bin_index(angle, 0.0, kTwoPi / static_cast<double>(bins_), bins_, true)];
  ++cos_counts_[bin_index(std::cos(angle), -1.0, 2.0 / static_cast<double>(bins_), bins_, false)];
}

AngleHistogram AngleAccumulator::angle_histogram() const {
  AngleHistogram h;
  h.counts = angle_counts_;
  h.samples = samples_;
  h.mass.assign(bins_, 1.0 / static_cast<double>(bins_));
  h.low_sample = samples_ < kMinHistogramSamples;
  if (samples_ == 0) return h;
  std::vector<double> achievable;
  h.normalized_occupancy = occupancy_over(h.counts, h.mass, samples_, achievable);
  h.flatness = coefficient_of_variation(achievable);
  return h;
}

ControlHistogram AngleAccumulator::control_histogram() const {
  ControlHistogram c;
  c.counts = cos_counts_;
  if (samples_ == 0) return c;
  // push-forward of the uniform circle measure under cos: (asin b - asin a) / pi
  std::vector<double> mass(bins_);
  const double w = 2.0 / static_cast<double>(bins_);
  for (std::size_t i = 0; i < bins_; ++i) {
    const double a = std::clamp(-1.0 + w * static_cast<double>(i), -1.0, 1.0);
    const double b = std::clamp(-1.0 + w * static_cast<double>(i + 1), -1.0, 1.0);
    mass[i] = (std::asin(b) - std::asin(a)) / kPi;
  }
  std::vector<double> raw;
  std::vector<double> weighted;
  for (std::size_t i = 0; i < bins_; ++i) {
    if (c.counts[i] == 0) continue;
    raw.push_back(static_cast<double>(c.counts[i]));
    weighted.push_back(static_cast<double>(c.counts[i]) / static_cast<double>(samples_) / mass[i]);
  }
  c.degenerate = raw.size() <= 1;
  c.flatness = coefficient_of_variation(raw);
  c.weighted_flatness = coefficient_of_variation(weighted);
  return c;
}

AngleHistogram orbit_angle_histogram(const std::vector<OrbitRecord>& orbit, std::size_t bins) {
  AngleAccumulator acc(bins);
  if (orbit.size() >= 2) {
    const OrbitClosure closure = OrbitClosure::from_orbit(orbit);
    for (const auto& rec : orbit) acc.add(closure.angle_of(build_unitary(rec.coords)));
  } else {
    for (std::size_t i = 0; i < orbit.size(); ++i) acc.add(0.0);
  }
  return acc.angle_histogram();
}

ControlHistogram non_invariant_control(const std::vector<OrbitRecord>& orbit, std::size_t bins) {
  AngleAccumulator acc(bins);
  if (orbit.size() >= 2) {
    const OrbitClosure closure = OrbitClosure::from_orbit(orbit);
    for (const auto& rec : orbit) acc.add(closure.angle_of(build_unitary(rec.coords)));
  } else {
    for (std::size_t i = 0; i < orbit.size(); ++i) acc.add(0.0);
  }
  return acc.control_histogram();
}

std::vector<FlatnessPoint> flatness_series(const UnitaryOperator& u,
                                           const std::vector<std::uint64_t>& checkpoints,
                                           std::size_t bins) {
  std::vector<FlatnessPoint> out;
  if (checkpoints.empty()) return out;
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorKind::InvalidArgument, "checkpoints must be ascending");
  }
  const std::uint64_t last = checkpoints.back();
  if (last == 0) return out;
  const OrbitClosure closure = OrbitClosure::of(u);
  AngleAccumulator acc(bins);
  std::size_t next = 0;
  while (next < checkpoints.size() && checkpoints[next] == 0) ++next;
  for_each_orbit_element(u, static_cast<std::size_t>(last - 1),
                         [&](const OrbitRecord&, const UnitaryOperator& power) {
                           acc.add(closure.angle_of(power));
                           while (next < checkpoints.size() && checkpoints[next] == acc.samples()) {
                             out.push_back({acc.samples(), acc.angle_histogram().flatness,
                                            acc.control_histogram().flatness});
                             ++next;
                           }
                         });
  return out;
}

}  // namespace liouville
