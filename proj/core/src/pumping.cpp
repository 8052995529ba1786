#include "liouville/pumping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "liouville/ergodic.hpp"
#include "liouville/error.hpp"
#include "liouville/numerics.hpp"

namespace liouville {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kConvergedTail = 1e-3;
constexpr double kDivergedTail = 1e-2;

double reduce_angle(double phi) {
  // to (-pi, pi]
  double r = std::remainder(phi, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double transition(const UnitaryOperator& g) { return std::norm(g(1, 0)); }

}  // namespace

PumpingSeries pumping_series(const GroupCoordinates& coords, std::size_t count) {
  if (count > kMaxOrbitLength) {
    throw Error(ErrorKind::InvalidArgument, "N exceeds " + std::to_string(kMaxOrbitLength));
  }
  PumpingSeries s;
  s.params = coords;
  s.p_n.reserve(count);
  s.running_average.reserve(count);
  const UnitaryOperator u = build_unitary(coords);
  QuantumState state = QuantumState::ground();
  double sum = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) {
      state = u * state;
      if (n % kReunitarizeEvery == 0) state = QuantumState::normalized(state.amp[0], state.amp[1]);
    }
    const double p = std::clamp(std::norm(state.amp[1]), 0.0, 1.0);
    s.p_n.push_back(p);
    sum += p;
    s.running_average.push_back(sum / static_cast<double>(n + 1));
  }
  return s;
}

ClosedFormValue geometric_pumping_closed_form(double phi) {
  const double r = reduce_angle(phi);
  if (r == 0.0) return {0.1, true};
  const double s1 = std::sin(0.5 * r);
  const double c1 = std::cos(0.5 * r);
  const double s2 = std::sin(r);
  const double s1sq = s1 * s1;
  return {s1sq / (2.0 * (s1sq + c1 * c1 * s2 * s2)), false};
}

std::complex<double> third_order_expansion(double phi) {
  const double s = std::sin(0.5 * phi);
  const double c = std::cos(0.5 * phi);
  const complex e1 = std::polar(1.0, phi);
  const complex e2 = std::polar(1.0, 2.0 * phi);
  const complex em2 = std::polar(1.0, -2.0 * phi);
  return e1 * c * (-s * c - e2 * s * c) - e1 * s * (-s * s + em2 * c * c);
}

double orbit_average_pumping(const GroupCoordinates& coords) {
  const OrbitClosure closure = OrbitClosure::of(build_unitary(coords));
  if (closure.period() > 0) {
    double sum = 0.0;
    for (std::size_t k = 0; k < closure.period(); ++k) {
      sum += transition(closure.element(kTwoPi * static_cast<double>(k) /
                                        static_cast<double>(closure.period())));
    }
    return sum / static_cast<double>(closure.period());
  }
  return adaptive_simpson([&](double t) { return transition(closure.element(t)); }, 0.0, kTwoPi,
                          1e-12) /
         kTwoPi;
}

PumpingComparison compare_average_to_closed_form(const GroupCoordinates& coords,
                                                 std::size_t count) {
  if (count < 10'000) {
    throw Error(ErrorKind::InvalidArgument, "N must be at least 1e4");
  }
  const PumpingSeries s = pumping_series(coords, count);
  PumpingComparison r;
  r.count = count;
  r.running_average = s.running_average.back();
  r.half_average = s.running_average[count / 2 - 1];
  for (std::size_t n = count / 10; n < count; ++n) {
    r.tail_oscillation =
        std::max(r.tail_oscillation, std::abs(s.running_average[n] - r.running_average));
  }
  if (r.tail_oscillation > kDivergedTail) {
    throw Error(ErrorKind::NotConverged,
                "running average tail oscillation " + std::to_string(r.tail_oscillation));
  }
  r.converged = r.tail_oscillation < kConvergedTail;
  r.orbit_average = orbit_average_pumping(coords);
  r.oracle_deviation = std::abs(r.running_average - r.orbit_average);
  r.closed_form = geometric_pumping_closed_form(coords.phi);
  r.closed_form_deviation = r.running_average - r.closed_form.value;
  return r;
}

GroupCoordinates slice_coordinates(PumpingSlice slice, double phi) {
  switch (slice) {
    case PumpingSlice::ThetaEqualsPhi: return {phi, phi, 0.0};
    case PumpingSlice::ThetaHalfPi: return {phi, std::numbers::pi / 2, 0.0};
    case PumpingSlice::ThetaHalfPhi: return {phi, phi / 2, 0.0};
  }
  return {phi, phi, 0.0};
}

std::vector<SliceScanRow> pumping_slice_scan(const std::vector<double>& phis) {
  constexpr PumpingSlice kSlices[] = {PumpingSlice::ThetaEqualsPhi, PumpingSlice::ThetaHalfPi,
                                      PumpingSlice::ThetaHalfPhi};
  std::vector<SliceScanRow> rows;
  for (double phi : phis) {
    for (PumpingSlice slice : kSlices) {
      SliceScanRow row;
      row.slice = slice;
      row.coords = slice_coordinates(slice, phi);
      rows.push_back(row);
    }
  }
  const auto evaluate = [&rows](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < rows.size(); i += stride) {
      SliceScanRow& row = rows[i];
      row.orbit_average = orbit_average_pumping(row.coords);
      row.closed_form = geometric_pumping_closed_form(row.coords.phi).value;
      row.deviation = row.orbit_average - row.closed_form;
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(rows.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(evaluate, w, workers);
  evaluate(0, workers);
  return rows;
}

}  // namespace liouville
