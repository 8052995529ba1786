#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "liouville/error.hpp"
#include "liouville/groupspace.hpp"
#include "liouville/numerics.hpp"
#include "liouville/random.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

constexpr double kPi = std::numbers::pi;

GroupCoordinates random_coords(Rng& rng, double margin = 0.0) {
  return {rng.uniform(-kPi, kPi), rng.uniform(margin, kPi - margin), rng.uniform(-kPi, kPi)};
}

UnitaryOperator random_unitary(Rng& rng) {
  // global phase included on purpose
  return std::polar(1.0, rng.uniform(-kPi, kPi)) * build_unitary(random_coords(rng));
}

QuantumState random_state(Rng& rng) {
  return QuantumState::normalized({rng.normal(), rng.normal()}, {rng.normal(), rng.normal()});
}

double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

}  // namespace

TEST_CASE("build_unitary matches the entrywise model matrix and has unit determinant") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_coords(rng);
    const auto u = build_unitary(g);
    CHECK(frobenius_distance(u, oracle::model_matrix(g.phi, g.theta, g.omega)) < 1e-14);
    CHECK(std::abs(u.det() - complex(1.0)) < 1e-14);
    CHECK(unitarity_defect(u) < 1e-14);
  }
}

TEST_CASE("decompose_unitary inverts build_unitary away from the gauge points") {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_coords(rng, 1e-3);
    const auto back = decompose_unitary(build_unitary(g));
    CHECK(angle_gap(back.phi, g.phi) < 1e-10);
    CHECK(std::abs(back.theta - g.theta) < 1e-10);
    CHECK(angle_gap(back.omega, g.omega) < 1e-10);
  }
}

TEST_CASE("decompose_unitary ignores a global phase") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_coords(rng, 1e-3);
    const auto u = std::polar(1.0, rng.uniform(-kPi, kPi)) * build_unitary(g);
    CHECK(std::abs(to_special_unitary(u).det() - complex(1.0)) < 1e-12);
    const auto back = decompose_unitary(u);
    // sqrt(det) is fixed only up to sign, so compare projectively
    const auto rebuilt = build_unitary(back);
    const auto w = rebuilt.adjoint() * u;
    CHECK(std::abs(std::abs(w.trace()) - 2.0) < 1e-12);
  }
}

TEST_CASE("gauge points store Omega as zero and still rebuild the operator") {
  for (double theta : {0.0, kPi}) {
    const auto u = build_unitary({0.7, theta, 1.3});
    const auto g = decompose_unitary(u);
    CHECK(g.omega == 0.0);
    CHECK(std::abs(std::abs((build_unitary(g).adjoint() * u).trace()) - 2.0) < 1e-12);
  }
}

TEST_CASE("decompose_unitary rejects non-unitary input") {
  UnitaryOperator m = UnitaryOperator::identity();
  m.m[1] = 1e-6;
  CHECK_THROWS_AS(decompose_unitary(m), Error);
  try {
    decompose_unitary(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitaryInput);
  }
}

TEST_CASE("canonicalize wraps angles and rejects Theta outside [0, pi]") {
  const auto c = canonicalize({3 * kPi, 0.5, -3 * kPi});
  CHECK(c.phi == doctest::Approx(-kPi));
  CHECK(c.omega == doctest::Approx(-kPi));
  CHECK_THROWS_AS(canonicalize({0.0, -0.1, 0.0}), Error);
  CHECK_THROWS_AS(canonicalize({0.0, kPi + 0.1, 0.0}), Error);
  CHECK_THROWS_AS(canonicalize({NAN, 0.1, 0.0}), Error);
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("polar_project restores unitarity of a perturbed operator") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    auto u = random_unitary(rng);
    for (auto& z : u.m) z += complex(rng.uniform(-1e-6, 1e-6), rng.uniform(-1e-6, 1e-6));
    const auto p = polar_project(u);
    CHECK(unitarity_defect(p) < 1e-14);
    CHECK(frobenius_distance(p, u) < 1e-5);
  }
}

TEST_CASE("model Haar density folds about Theta = pi/2") {
  const MeasureField su2{GroupId::Su2Model};
  CHECK(haar_density(su2, {0.0, kPi / 4, 0.0}) == doctest::Approx(1.0));
  CHECK(haar_density(su2, {0.0, 3 * kPi / 4, 0.0}) == doctest::Approx(1.0));
  CHECK(haar_density(su2, {0.0, kPi / 2, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(haar_density(su2, {1.0, 0.3, -2.0}) == doctest::Approx(std::sin(0.6)));
  CHECK(haar_density(MeasureField{GroupId::So3}, {0.0, 0.3, 0.0}) == doctest::Approx(std::sin(0.3)));
  CHECK(haar_density(MeasureField{GroupId::Uniform}, {5.0, 5.0, 5.0}) == 1.0);
  CHECK_THROWS_AS(haar_density(su2, {0.0, 4.0, 0.0}), Error);
  CHECK_THROWS_AS(haar_density(su2, {4.0, 1.0, 0.0}), Error);
}

TEST_CASE("left translation in model coordinates scales volume by sin(Theta)/sin(Theta')") {
  // Direct check of the invariant density of the (Phi, Theta, Omega) chart.
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const auto v = build_unitary(random_coords(rng, 0.2));
    const auto at = random_coords(rng, 0.2);
    const auto image = decompose_unitary(v * build_unitary(at));
    if (image.theta < 0.05 || image.theta > kPi - 0.05) continue;
    const double jac = oracle::angle_map_jacobian(
        [&](const std::array<double, 3>& x) {
          const auto g = decompose_unitary(v * build_unitary({x[0], x[1], x[2]}));
          return std::array<double, 3>{g.phi, g.theta, g.omega};
        },
        {at.phi, at.theta, at.omega}, 1e-5);
    CHECK(std::abs(jac) == doctest::Approx(std::sin(at.theta) / std::sin(image.theta)).epsilon(1e-6));
  }
}

TEST_CASE("group_distance is bi-invariant, symmetric and vanishes on the diagonal") {
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_unitary(rng);
    const auto b = random_unitary(rng);
    const auto w = random_unitary(rng);
    const double d = group_distance(a, b);
    CHECK(std::abs(group_distance(w * a, w * b) - d) < 1e-12);
    CHECK(std::abs(group_distance(a * w, b * w) - d) < 1e-12);
    CHECK(std::abs(group_distance(b, a) - d) < 1e-12);
    CHECK(group_distance(a, a) < 1e-7);
    const auto c = random_unitary(rng);
    CHECK(group_distance(a, c) <= group_distance(a, b) + group_distance(b, c) + 1e-12);
  }
}

TEST_CASE("state_distance is invariant under a common unitary") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_state(rng);
    const auto b = random_state(rng);
    const auto u = random_unitary(rng);
    CHECK(std::abs(state_distance(u * a, u * b) - state_distance(a, b)) < 1e-12);
  }
  const auto g = QuantumState::ground();
  CHECK(state_distance(g, QuantumState::normalized(0.0, 1.0)) == doctest::Approx(kPi / 2));
  CHECK(state_distance(g, g) == 0.0);
}

TEST_CASE("distances reject inputs that are not unitary or normalized") {
  UnitaryOperator m = UnitaryOperator::identity();
  m.m[0] = 1.1;
  CHECK_THROWS_AS(group_distance(m, UnitaryOperator::identity()), Error);
  QuantumState s;
  s.amp = {complex(1.1), complex()};
  CHECK_THROWS_AS(state_distance(s, QuantumState::ground()), Error);
}

TEST_CASE("SO(3) Euler round trip and inverse") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const EulerAngles e{rng.uniform(-kPi, kPi), rng.uniform(0.01, kPi - 0.01), rng.uniform(-kPi, kPi)};
    const auto r = rotation_matrix(e);
    double orth = 0.0;
    const auto rrt = r * rotation_matrix(inverse(e));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) orth = std::max(orth, std::abs(rrt[a][b] - (a == b ? 1.0 : 0.0)));
    CHECK(orth < 1e-12);
    const auto back = euler_from_rotation(r);
    CHECK_FALSE(back.gimbal_degenerate);
    CHECK(angle_gap(back.angles.phi, e.phi) < 1e-10);
    CHECK(std::abs(back.angles.theta - e.theta) < 1e-10);
    CHECK(angle_gap(back.angles.psi, e.psi) < 1e-10);
  }
}

TEST_CASE("SO(3) extraction flags the gimbal case") {
  const auto ex = euler_from_rotation(rotation_matrix({0.4, 0.0, 0.3}));
  CHECK(ex.gimbal_degenerate);
  CHECK(ex.angles.psi == 0.0);
  CHECK(angle_gap(ex.angles.phi, 0.7) < 1e-12);
}

TEST_CASE("SO(3) translation Jacobian equals sin(theta)/sin(theta') for random pairs") {
  Rng rng(9);
  int checked = 0;
  while (checked < 100) {
    const EulerAngles fixed{rng.uniform(-kPi, kPi), rng.uniform(0.1, kPi - 0.1), rng.uniform(-kPi, kPi)};
    const EulerAngles at{rng.uniform(-kPi, kPi), rng.uniform(0.1, kPi - 0.1), rng.uniform(-kPi, kPi)};
    const double theta_prime = compose_so3(fixed, at).angles.theta;
    if (theta_prime < 0.1 || theta_prime > kPi - 0.1) continue;
    const double expected = std::sin(at.theta) / std::sin(theta_prime);
    CHECK(std::abs(so3_translation_jacobian(fixed, at) - expected) / expected < 1e-4);
    ++checked;
  }
}

TEST_CASE("SO(3) translation Jacobian guards singular charts and step sizes") {
  const EulerAngles fixed{0.1, 0.5, 0.2};
  CHECK_THROWS_AS(so3_translation_jacobian(fixed, {0.0, 1e-8, 0.0}), Error);
  CHECK_THROWS_AS(so3_translation_jacobian(fixed, {0.0, 1.0, 0.0}, 1e-2), Error);
  CHECK_THROWS_AS(so3_translation_jacobian(fixed, {0.0, 1.0, 0.0}, 1e-8), Error);
}

TEST_CASE("reference operators: identity and the pi/4 real rotation") {
  CHECK(frobenius_distance(build_unitary({0, 0, 0}), UnitaryOperator::identity()) == 0.0);
  const auto r = build_unitary({0.0, kPi / 4, 0.0});
  const double c = std::cos(kPi / 8);
  const double s = std::sin(kPi / 8);
  CHECK(std::abs(r(0, 0) - complex(c)) < 1e-15);
  CHECK(std::abs(r(0, 1) - complex(-s)) < 1e-15);
  CHECK(std::abs(r(1, 0) - complex(s)) < 1e-15);
  CHECK(std::abs(r(1, 1) - complex(c)) < 1e-15);
  const auto id = decompose_unitary(UnitaryOperator::identity());
  CHECK(id.phi == 0.0);
  CHECK(id.theta == 0.0);
  CHECK(id.omega == 0.0);
  const auto g = decompose_unitary(build_unitary({0.3, 1.1, -2.0}));
  CHECK(g.phi == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(g.theta == doctest::Approx(1.1).epsilon(1e-10));
  CHECK(g.omega == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("round trip holds for 1000 uniformly drawn canonical triples") {
  Rng rng(10);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_coords(rng);
    const auto back = decompose_unitary(build_unitary(g));
    if (g.theta < 1e-7 || g.theta > kPi - 1e-7) continue;
    worst = std::max({worst, angle_gap(back.phi, g.phi), std::abs(back.theta - g.theta),
                      angle_gap(back.omega, g.omega)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("model Haar density has mass 4 pi^2 on the half box Theta in [0, pi/2]") {
  const MeasureField su2{GroupId::Su2Model};
  const double theta_mass =
      adaptive_simpson([&](double t) { return haar_density(su2, {0.0, t, 0.0}); }, 0.0, kPi / 2, 1e-13);
  CHECK(theta_mass * 4 * kPi * kPi == doctest::Approx(4 * kPi * kPi).epsilon(1e-6));
  CHECK(haar_density(MeasureField{GroupId::So3}, {0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("group distance quotients the global phase") {
  const auto id = UnitaryOperator::identity();
  CHECK(group_distance(id, complex(-1.0) * id) < 1e-7);
  CHECK(group_distance(id, std::polar(1.0, 0.4) * id) < 1e-7);
}

TEST_CASE("SO(3) composition matches the matrix product") {
  Rng rng(11);
  const EulerAngles identity{0.0, 0.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    const EulerAngles a{rng.uniform(-kPi, kPi), rng.uniform(0.05, kPi - 0.05), rng.uniform(-kPi, kPi)};
    const EulerAngles b{rng.uniform(-kPi, kPi), rng.uniform(0.05, kPi - 0.05), rng.uniform(-kPi, kPi)};
    const auto ab = compose_so3(a, b);
    const auto direct = rotation_matrix(a) * rotation_matrix(b);
    const auto got = rotation_matrix(ab.angles);
    double err = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) err = std::max(err, std::abs(got[r][c] - direct[r][c]));
    CHECK(err < 1e-10);

    const auto same = compose_so3(identity, b);
    CHECK(angle_gap(same.angles.phi, b.phi) < 1e-10);
    CHECK(std::abs(same.angles.theta - b.theta) < 1e-10);
    CHECK(angle_gap(same.angles.psi, b.psi) < 1e-10);

    const auto round = compose_so3(a, inverse(a));
    CHECK(round.angles.theta < 1e-7);
    CHECK(round.gimbal_degenerate);
    const auto rr = rotation_matrix(round.angles);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(rr[r][c] - (r == c ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("SO(3) translation Jacobian is one for the identity and for z rotations") {
  CHECK(so3_translation_jacobian({0.0, 0.0, 0.0}, {0.4, 1.0, -0.7}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(so3_translation_jacobian({0.9, 0.0, 0.0}, {0.4, kPi / 2, 0.2}) == doctest::Approx(1.0).epsilon(1e-6));
}
