#pragma once

// Inter-level pumping under repeated application of U: the brute-force series
// p_n = |<1|U^n|0>|^2, its Cesaro mean, and the closed form p_G(Phi).

#include <cstddef>
#include <vector>

#include "liouville/groupspace.hpp"

namespace liouville {

struct PumpingSeries {
  GroupCoordinates params;
  /// p_n for n = 0..N-1
  std::vector<double> p_n;
  /// running_average[k] = mean of p_0..p_k
  std::vector<double> running_average;
};

/// Throws InvalidArgument if N > 1e7.
PumpingSeries pumping_series(const GroupCoordinates& coords, std::size_t count);

struct ClosedFormValue {
  double value = 0.0;
  /// Set when Phi is a multiple of 2 pi and the removable 0/0 was replaced by 1/10.
  bool limit_substituted = false;
};

/// sin^2(Phi/2) / (2 (1 - cos^2(Phi/2) cos^2(Phi))), evaluated as
/// s1^2 / (2 (s1^2 + c1^2 sin^2 Phi)) to avoid cancellation near Phi = 0.
ClosedFormValue geometric_pumping_closed_form(double phi);

/// <0| U^3 |1> on the slice Theta = Phi, Omega = 0, written out as the explicit
/// four-term expansion. Its squared modulus is p_3 on the slice Theta = Phi.
std::complex<double> third_order_expansion(double phi);

/// Time average of |<1|G|0>|^2 over the orbit closure of U, by quadrature over
/// the rotation angle (or the exact mean over a finite cyclic orbit).
double orbit_average_pumping(const GroupCoordinates& coords);

struct PumpingComparison {
  std::size_t count = 0;
  double running_average = 0.0;
  double half_average = 0.0;
  /// max |a_n - a_N| over the last decade n in [N/10, N]
  double tail_oscillation = 0.0;
  bool converged = false;
  double orbit_average = 0.0;
  double oracle_deviation = 0.0;
  ClosedFormValue closed_form;
  /// running_average - p_G(Phi); informational, not asserted
  double closed_form_deviation = 0.0;
};

/// Throws InvalidArgument if N < 1e4, NotConverged if the tail oscillation
/// exceeds 1e-2.
PumpingComparison compare_average_to_closed_form(const GroupCoordinates& coords, std::size_t count);

/// Candidate (Theta, Omega) slices as functions of Phi for comparing the orbit
/// average with p_G(Phi).
enum class PumpingSlice { ThetaEqualsPhi, ThetaHalfPi, ThetaHalfPhi };

struct SliceScanRow {
  PumpingSlice slice = PumpingSlice::ThetaEqualsPhi;
  GroupCoordinates coords;
  double orbit_average = 0.0;
  double closed_form = 0.0;
  /// orbit_average - p_G(Phi)
  double deviation = 0.0;
};

GroupCoordinates slice_coordinates(PumpingSlice slice, double phi);

/// Evaluates every candidate slice at every phi. Rows are independent and are
/// split across hardware threads.
std::vector<SliceScanRow> pumping_slice_scan(const std::vector<double>& phis);

}  // namespace liouville
