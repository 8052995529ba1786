#include <cmath>
#include <numbers>

#include "doctest.h"
#include "liouville/classical.hpp"
#include "liouville/error.hpp"

using namespace liouville;

namespace {

double max_harmonic_error(double dt, double t_end) {
  const auto h = HamiltonianSpec::harmonic(1.3, 0.8);
  const PhaseSpacePoint x0{0.4, 1.1};
  PhaseSpacePoint x = x0;
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  double worst = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    x = leapfrog_step(x, dt, h);
    const auto ref = exact_harmonic_flow(x0, static_cast<double>(i) * dt, h.mass, h.omega);
    worst = std::max(worst, std::hypot(x.p - ref.p, x.q - ref.q));
  }
  return worst;
}

}  // namespace

TEST_CASE("exact harmonic flow satisfies Hamilton's equations") {
  const auto h = HamiltonianSpec::harmonic(2.0, 1.5);
  const PhaseSpacePoint x0{0.3, -0.7};
  const double eps = 1e-6;
  for (double t : {0.0, 0.4, 2.5}) {
    const auto x = exact_harmonic_flow(x0, t, h.mass, h.omega);
    const auto xp = exact_harmonic_flow(x0, t + eps, h.mass, h.omega);
    const auto xm = exact_harmonic_flow(x0, t - eps, h.mass, h.omega);
    const auto r = h.rates(x);
    CHECK((xp.p - xm.p) / (2 * eps) == doctest::Approx(r.p).epsilon(1e-8));
    CHECK((xp.q - xm.q) / (2 * eps) == doctest::Approx(r.q).epsilon(1e-8));
    CHECK(h.energy(x) == doctest::Approx(h.energy(x0)).epsilon(1e-14));
  }
}

TEST_CASE("leapfrog converges to the exact harmonic flow at second order") {
  const double e1 = max_harmonic_error(0.02, 20.0);
  const double e2 = max_harmonic_error(0.01, 20.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("leapfrog keeps energy bounded for the nonlinear systems") {
  for (const auto& h : {HamiltonianSpec::quartic(), HamiltonianSpec::pendulum()}) {
    PhaseSpacePoint x{0.5, 1.0};
    const double e0 = h.energy(x);
    double drift = 0.0;
    for (int i = 0; i < 100000; ++i) {
      x = leapfrog_step(x, 1e-3, h);
      drift = std::max(drift, std::abs(h.energy(x) - e0));
    }
    CHECK(drift < 1e-5);
  }
}

TEST_CASE("leapfrog refuses the damped control and dt = 0 is the identity") {
  CHECK_THROWS_AS(leapfrog_step({1, 1}, 1e-3, HamiltonianSpec::damped()), Error);
  const PhaseSpacePoint x{0.25, -0.5};
  const auto y = leapfrog_step(x, 0.0, HamiltonianSpec::quartic());
  CHECK(y.p == x.p);
  CHECK(y.q == x.q);
}

TEST_CASE("divergence field is zero for Hamiltonian kinds and -gamma for the control") {
  const PhaseSpacePoint x{0.3, 0.2};
  CHECK(divergence_field(HamiltonianSpec::harmonic(), x) == 0.0);
  CHECK(divergence_field(HamiltonianSpec::quartic(), x) == 0.0);
  CHECK(divergence_field(HamiltonianSpec::pendulum(), x) == 0.0);
  CHECK(divergence_field(HamiltonianSpec::damped(1.0, 1.0, 0.5), x) == -0.5);

  // agrees with a finite-difference divergence of the rates
  for (const auto& h : {HamiltonianSpec::quartic(), HamiltonianSpec::damped(1.0, 2.0, 0.3)}) {
    const double e = 1e-6;
    const double div = (h.rates({x.p + e, x.q}).p - h.rates({x.p - e, x.q}).p) / (2 * e) +
                       (h.rates({x.p, x.q + e}).q - h.rates({x.p, x.q - e}).q) / (2 * e);
    CHECK(div == doctest::Approx(divergence_field(h, x)).epsilon(1e-8));
  }
}

TEST_CASE("flow Jacobian determinant is one for Hamiltonian flows") {
  for (const auto& h :
       {HamiltonianSpec::harmonic(), HamiltonianSpec::quartic(), HamiltonianSpec::pendulum()}) {
    for (double t : {1.0, 10.0, 30.0}) {
      CHECK(std::abs(flow_jacobian(h, {0.2, 0.9}, t) - 1.0) < 1e-4);
    }
  }
}

TEST_CASE("damped control contracts phase-space area as exp(-gamma t)") {
  const auto h = HamiltonianSpec::damped(1.0, 1.0, 0.5);
  for (double t : {1.0, 5.0, 10.0}) {
    CHECK(flow_jacobian(h, {0.2, 0.9}, t) == doctest::Approx(std::exp(-0.5 * t)).epsilon(1e-6));
  }
}

TEST_CASE("transported density stays constant along Hamiltonian trajectories") {
  const auto e = Ensemble::gaussian(64, {0.0, 1.0}, 0.3, 11);
  const auto r = transport_density(e, HamiltonianSpec::quartic(), 20.0);
  CHECK(r.max_residual < 1e-3);
  CHECK(r.probes.size() == 64);
}

TEST_CASE("damped density residual grows as exp(gamma t) - 1") {
  const auto h = HamiltonianSpec::damped(1.0, 1.0, 0.5);
  const auto e = Ensemble::gaussian(32, {0.0, 1.0}, 0.3, 12);
  const double t = 4.0;
  const auto r = transport_density(e, h, t);
  CHECK(r.max_residual == doctest::Approx(std::exp(0.5 * t) - 1.0).epsilon(0.05));
}

TEST_CASE("nearest-neighbour areas agree with the Jacobian for a linear flow") {
  const auto e = Ensemble::gaussian(400, {0.0, 0.0}, 0.5, 13);
  TransportOptions opts;
  opts.knn_cross_check = true;
  const auto harmonic = transport_density(e, HamiltonianSpec::harmonic(), 3.0, 1e-3, opts);
  CHECK(harmonic.knn_max_residual < 1e-4);
  const auto damped = transport_density(e, HamiltonianSpec::damped(1.0, 1.0, 0.5), 2.0, 1e-3, opts);
  for (const auto& p : damped.probes) CHECK(p.det_jacobian == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(damped.knn_max_residual > 1.0);
}

TEST_CASE("ensemble sampling is seeded and normalized") {
  const auto a = Ensemble::gaussian(50, {1.0, 2.0}, 0.2, 99);
  const auto b = Ensemble::gaussian(50, {1.0, 2.0}, 0.2, 99);
  double sum = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(a.points[i].p == b.points[i].p);
    CHECK(a.points[i].q == b.points[i].q);
    sum += a.weights[i];
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK_THROWS_AS(Ensemble::gaussian(0, {}, 0.2, 1), Error);
  CHECK_THROWS_AS(transport_density(Ensemble{}, HamiltonianSpec::harmonic(), 1.0), Error);
}

TEST_CASE("invalid system parameters are rejected") {
  CHECK_THROWS_AS(HamiltonianSpec::harmonic(-1.0).validate(), Error);
  CHECK_THROWS_AS(HamiltonianSpec::harmonic(1.0, 0.0).validate(), Error);
  CHECK_THROWS_AS(HamiltonianSpec::pendulum(1.0, -2.0).validate(), Error);
  CHECK_THROWS_AS(HamiltonianSpec::damped(1.0, 1.0, -0.1).validate(), Error);
}

TEST_CASE("pair distance is conserved by the unit harmonic rotation and sheared by the quartic") {
  const auto rot = pair_distance_series(HamiltonianSpec::harmonic(), {0.0, 1.0}, {0.0, 1.01}, 20.0);
  for (const auto& s : rot) CHECK(s.distance == doctest::Approx(0.01).epsilon(1e-6));
  const auto shear = pair_distance_series(HamiltonianSpec::quartic(), {0.0, 1.0}, {0.0, 1.01}, 50.0);
  CHECK(shear.back().distance / shear.front().distance > 1.1);
  CHECK(shear.front().t == 0.0);
  CHECK(shear.back().t == doctest::Approx(50.0));
}

TEST_CASE("transport series starts at t = 0 and follows the stride") {
  const auto e = Ensemble::gaussian(8, {0.0, 1.0}, 0.3, 3);
  const auto s = transport_series(e, HamiltonianSpec::pendulum(), 1.0, 1e-3, 100);
  REQUIRE(s.size() == 11);
  CHECK(s.front().time == 0.0);
  CHECK(s[5].time == doctest::Approx(0.5));
  CHECK(s.front().max_residual < 1e-9);
}

TEST_CASE("exact harmonic flow reference values") {
  const PhaseSpacePoint x0{0.6, -0.2};
  const auto same = exact_harmonic_flow(x0, 0.0, 1.0, 2.0);
  CHECK(same.p == x0.p);
  CHECK(same.q == x0.q);
  const auto back = exact_harmonic_flow(x0, 2 * std::numbers::pi / 2.0, 1.0, 2.0);
  CHECK(std::hypot(back.p - x0.p, back.q - x0.q) < 1e-14);
  const auto quarter = exact_harmonic_flow({1.0, 0.0}, std::numbers::pi / 2, 1.0, 1.0);
  CHECK(std::abs(quarter.p) < 1e-15);
  CHECK(quarter.q == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exact harmonic flow agrees with a fine RK4 integration") {
  const auto h = HamiltonianSpec::harmonic(1.7, 0.9);
  PhaseSpacePoint x{-0.3, 0.8};
  const PhaseSpacePoint x0 = x;
  for (int i = 0; i < 50000; ++i) x = rk4_step(x, 1e-4, h);
  const auto ref = exact_harmonic_flow(x0, 5.0, h.mass, h.omega);
  CHECK(std::hypot(x.p - ref.p, x.q - ref.q) < 1e-12);
}

TEST_CASE("leapfrog returns to the start after one harmonic period and keeps energy over 1e6 steps") {
  const auto h = HamiltonianSpec::harmonic();
  const double dt = 1e-3;
  const auto steps = static_cast<std::size_t>(std::llround(2 * std::numbers::pi / dt));
  const PhaseSpacePoint x0{0.0, 1.0};
  PhaseSpacePoint x = x0;
  for (std::size_t i = 0; i < steps; ++i) x = leapfrog_step(x, 2 * std::numbers::pi / steps, h);
  CHECK(std::hypot(x.p - x0.p, x.q - x0.q) < 1e-5);

  const double e0 = h.energy(x0);
  x = x0;
  for (int i = 0; i < 1000000; ++i) x = leapfrog_step(x, dt, h);
  CHECK(std::abs(h.energy(x) - e0) / e0 < 1e-4);
}

TEST_CASE("flow Jacobian reference cases") {
  CHECK(std::abs(flow_jacobian(HamiltonianSpec::harmonic(), {0.3, 1.0}, 20 * std::numbers::pi) - 1.0) <
        1e-6);
  CHECK(std::abs(flow_jacobian(HamiltonianSpec::quartic(), {0.2, 0.9}, 10.0, 1e-4) - 1.0) < 1e-4);
  CHECK(flow_jacobian(HamiltonianSpec::damped(1.0, 1.0, 0.5), {0.2, 0.9}, 2.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("harmonic density transport residual stays below 1e-6") {
  const auto e = Ensemble::gaussian(32, {0.0, 1.0}, 0.3, 5);
  const auto report = transport_density(e, HamiltonianSpec::harmonic(), 2 * std::numbers::pi);
  CHECK(report.max_residual < 1e-6);
}
