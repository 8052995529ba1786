#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "liouville/ergodic.hpp"
#include "liouville/error.hpp"
#include "liouville/random.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

constexpr double kPi = std::numbers::pi;

UnitaryOperator real_rotation(double theta) { return build_unitary({0.0, theta, 0.0}); }

}  // namespace

TEST_CASE("orbit starts at the identity and the ground state") {
  const auto orbit = iterate_orbit(build_unitary({0.3, 1.0, -0.4}), 0);
  REQUIRE(orbit.size() == 1);
  CHECK(orbit[0].n == 0);
  CHECK(orbit[0].coords.theta == 0.0);
  CHECK(orbit[0].coords.phi == 0.0);
  CHECK(orbit[0].state.amp[0] == complex(1.0));
  CHECK(orbit[0].state.amp[1] == complex(0.0));
}

TEST_CASE("orbit of a real rotation agrees with binary matrix powers") {
  const double alpha = 0.37;
  const auto u = real_rotation(2 * alpha);
  const auto orbit = iterate_orbit(u, 5000);
  for (std::size_t n : {1U, 7U, 100U, 1023U, 1024U, 1025U, 4999U}) {
    const auto ref = oracle::power(u, n);
    CHECK(frobenius_distance(build_unitary(orbit[n].coords), ref) < 1e-10);
    // Theta_n = 2 |wrapped(n alpha)| folded into [0, pi]
    const double a = std::remainder(static_cast<double>(n) * alpha, 2 * kPi);
    const double folded = std::abs(a) <= kPi / 2 ? std::abs(a) : kPi - std::abs(a);
    CHECK(orbit[n].coords.theta == doctest::Approx(2 * folded).epsilon(1e-9));
    CHECK(std::norm(orbit[n].state.amp[1]) == doctest::Approx(std::norm(ref(1, 0))).epsilon(1e-10));
  }
}

TEST_CASE("repeated products stay unitary over a million steps") {
  const auto u = build_unitary({0.3, 1.0, 0.7});
  double worst = 0.0;
  for_each_orbit_element(u, 1'000'000, [&](const OrbitRecord& r, const UnitaryOperator& p) {
    if (r.n % 997 == 0) worst = std::max(worst, unitarity_defect(p));
  });
  CHECK(worst < 1e-10);
}

TEST_CASE("iterate_orbit validates its inputs") {
  UnitaryOperator bad = UnitaryOperator::identity();
  bad.m[0] = 1.5;
  CHECK_THROWS_AS(iterate_orbit(bad, 10), Error);
  CHECK_THROWS_AS(iterate_orbit(UnitaryOperator::identity(), kMaxOrbitLength + 1), Error);
}

TEST_CASE("orbit closure recovers rotation angle, period and angles") {
  const auto quarter = OrbitClosure::of(build_unitary({0.0, kPi / 4, 0.0}));
  CHECK(quarter.rotation_angle() == doctest::Approx(kPi / 8));
  CHECK(quarter.period() == 16);
  const auto generic = OrbitClosure::of(real_rotation(1.0));
  CHECK(generic.period() == 0);
  for (double t : {0.0, 0.5, 3.0, 6.0}) CHECK(generic.angle_of(generic.element(t)) == doctest::Approx(t));
  const auto u = build_unitary({0.4, 2.0, -1.1});
  const auto c = OrbitClosure::of(u);
  CHECK(frobenius_distance(c.element(c.rotation_angle()), to_special_unitary(u)) < 1e-12);
  CHECK(OrbitClosure::of(UnitaryOperator::identity()).degenerate());
}

TEST_CASE("bin_index snaps values within 1e-9 of an edge to the upper bin") {
  const double w = kPi / 20;
  CHECK(bin_index(5 * w - 1e-12, 0.0, w, 20, false) == 5);
  CHECK(bin_index(5 * w - 1e-6, 0.0, w, 20, false) == 4);
  CHECK(bin_index(kPi, 0.0, w, 20, false) == 19);
  CHECK(bin_index(-1.0, 0.0, w, 20, false) == 0);
  CHECK(bin_index(kPi, -kPi, 2 * w, 20, true) == 0);
  CHECK(bin_index(-kPi - 0.1, -kPi, 2 * w, 20, true) == 19);
}

TEST_CASE("histogram invariants hold") {
  const auto orbit = iterate_orbit(build_unitary({0.4, 1.0, 0.2}), 20000);
  const auto h = haar_histogram(orbit);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}) == orbit.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) CHECK(h.achievable_mask[b] == (h.counts[b] > 0));
  CHECK(std::accumulate(h.haar_weights.begin(), h.haar_weights.end(), 0.0) == doctest::Approx(1.0));
  // folded sin(2 Theta) integrates to 2 over [0, pi]
  CHECK(std::accumulate(h.ambient_mass.begin(), h.ambient_mass.end(), 0.0) ==
        doctest::Approx(8 * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("periodic orbit with the reference parameters is exactly flat") {
  const auto orbit = iterate_orbit(build_unitary({0.0, kPi / 4, 0.0}), 32000 - 1);
  const auto h = haar_histogram(orbit, 20);
  CHECK(h.flatness < 1e-12);
  CHECK(h.achievable_bins() == 16);
  const auto a = orbit_angle_histogram(orbit, 20);
  CHECK(std::count_if(a.counts.begin(), a.counts.end(), [](auto c) { return c > 0; }) == 16);
}

TEST_CASE("incommensurate rotation equidistributes on its closure") {
  const auto orbit = iterate_orbit(real_rotation(1.0), 1'000'000 - 1);
  const auto h = haar_histogram(orbit, 20);
  const auto a = orbit_angle_histogram(orbit, 20);
  const auto c = non_invariant_control(orbit, 20);
  CHECK(h.flatness < 0.05);
  CHECK(a.flatness < 0.01);
  CHECK(c.flatness > 0.5);
  CHECK(c.weighted_flatness < 0.05);
  CHECK(c.flatness >= 10 * a.flatness);
  CHECK_FALSE(a.low_sample);
}

TEST_CASE("rotation by 2 pi / k fills k angle bins equally") {
  // SU(2) rotation angle Theta/2 = 2 pi / 40
  const auto orbit = iterate_orbit(real_rotation(4 * kPi / 40), 40 * 50 - 1);
  const auto a = orbit_angle_histogram(orbit, 20);
  for (auto count : a.counts) CHECK(count == 100);
  CHECK(a.flatness == 0.0);
}

TEST_CASE("minimal orbits are flagged and the identity orbit is degenerate") {
  const auto short_orbit = iterate_orbit(real_rotation(1.0), 19);
  CHECK(orbit_angle_histogram(short_orbit, 20).low_sample);
  CHECK_THROWS_AS(haar_histogram(short_orbit), Error);

  const auto still = iterate_orbit(UnitaryOperator::identity(), 5000);
  const auto h = haar_histogram(still);
  CHECK(h.achievable_bins() == 1);
  CHECK(h.flatness == 0.0);
  CHECK(non_invariant_control(still).degenerate);
}

TEST_CASE("left translation of the orbit preserves Haar-normalized occupancy") {
  Rng rng(21);
  const auto orbit = iterate_orbit(build_unitary({0.5, 1.2, -0.3}), 200000);
  const auto before = orbit_angle_histogram(orbit);
  for (int trial = 0; trial < 3; ++trial) {
    const auto w = build_unitary({rng.uniform(-kPi, kPi), rng.uniform(0.2, kPi - 0.2), rng.uniform(-kPi, kPi)});
    std::vector<OrbitRecord> moved = orbit;
    for (auto& r : moved) {
      const auto g = w * build_unitary(r.coords);
      r.coords = decompose_unitary(g);
      r.state = w * r.state;
    }
    const auto after = orbit_angle_histogram(moved);
    std::uint64_t changed = 0;
    for (std::size_t b = 0; b < after.counts.size(); ++b) {
      changed += after.counts[b] > before.counts[b] ? after.counts[b] - before.counts[b] : 0;
    }
    CHECK(static_cast<double>(changed) < 0.02 * static_cast<double>(orbit.size()));

    // in the 3D chart, bins that deviate from unit occupancy hold few samples
    const auto h = haar_histogram(moved);
    std::uint64_t off = 0;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      if (h.counts[b] > 0 && std::abs(h.normalized_occupancy[b] - 1.0) > 0.05) off += h.counts[b];
    }
    CHECK(static_cast<double>(off) < 0.02 * static_cast<double>(moved.size()));
  }
}

TEST_CASE("flatness decreases as the orbit grows") {
  const auto series = flatness_series(real_rotation(1.0), {1000, 10000, 100000, 1000000});
  REQUIRE(series.size() == 4);
  for (std::size_t i = 1; i < series.size(); ++i) {
    CHECK(series[i].flatness_haar < series[i - 1].flatness_haar);
    CHECK(series[i].flatness_control > 0.5);
  }
  CHECK(series.back().n == 1000000);
}

TEST_CASE("state distance is constant along the orbit") {
  Rng rng(22);
  const auto u = build_unitary({0.3, 1.0, 0.7});
  QuantumState a = QuantumState::normalized({rng.normal(), rng.normal()}, {rng.normal(), rng.normal()});
  QuantumState b = QuantumState::normalized({rng.normal(), rng.normal()}, {rng.normal(), rng.normal()});
  const double d0 = state_distance(a, b);
  double drift = 0.0;
  for (int n = 1; n <= 100000; ++n) {
    a = u * a;
    b = u * b;
    if (n % 1024 == 0) {
      a = QuantumState::normalized(a.amp[0], a.amp[1]);
      b = QuantumState::normalized(b.amp[0], b.amp[1]);
    }
    drift = std::max(drift, std::abs(state_distance(a, b) - d0));
  }
  CHECK(drift < 1e-12);
}
