#include "liouville/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "liouville/error.hpp"
#include "liouville/random.hpp"

namespace liouville {

namespace {

std::size_t step_count(double t, double dt) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "time must be >= 0");
  if (t == 0.0) return 0;
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  return static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
}

PhaseSpacePoint step(const PhaseSpacePoint& x, double h, const HamiltonianSpec& spec) {
  return spec.is_hamiltonian() ? leapfrog_step(x, h, spec) : rk4_step(x, h, spec);
}

// Five trajectories: the centre plus +-fd offsets in p and q.
struct Stencil {
  std::array<PhaseSpacePoint, 5> x;

  Stencil(const PhaseSpacePoint& c, double fd) {
    x = {c, PhaseSpacePoint{c.p + fd, c.q}, PhaseSpacePoint{c.p - fd, c.q},
         PhaseSpacePoint{c.p, c.q + fd}, PhaseSpacePoint{c.p, c.q - fd}};
  }

  void advance(double h, const HamiltonianSpec& spec) {
    for (auto& pt : x) pt = step(pt, h, spec);
  }

  double det(double fd) const {
    const double dpdp = (x[1].p - x[2].p) / (2.0 * fd);
    const double dqdp = (x[1].q - x[2].q) / (2.0 * fd);
    const double dpdq = (x[3].p - x[4].p) / (2.0 * fd);
    const double dqdq = (x[3].q - x[4].q) / (2.0 * fd);
    return dpdp * dqdq - dpdq * dqdp;
  }
};

double kth_neighbour_distance(const std::vector<PhaseSpacePoint>& pts, std::size_t i,
                              std::size_t k) {
  std::vector<double> d;
  d.reserve(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == i) continue;
    d.push_back(std::hypot(pts[j].p - pts[i].p, pts[j].q - pts[i].q));
  }
  const std::size_t idx = std::min(k, d.size()) - 1;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(idx), d.end());
  return d[idx];
}

}  // namespace

HamiltonianSpec HamiltonianSpec::harmonic(double m, double omega) {
  HamiltonianSpec h;
  h.kind = SystemKind::Harmonic;
  h.mass = m;
  h.omega = omega;
  return h;
}

HamiltonianSpec HamiltonianSpec::quartic(double m, double k2, double k4) {
  HamiltonianSpec h;
  h.kind = SystemKind::Quartic;
  h.mass = m;
  h.k2 = k2;
  h.k4 = k4;
  return h;
}

HamiltonianSpec HamiltonianSpec::pendulum(double m, double length, double gravity) {
  HamiltonianSpec h;
  h.kind = SystemKind::Pendulum;
  h.mass = m;
  h.length = length;
  h.gravity = gravity;
  return h;
}

HamiltonianSpec HamiltonianSpec::damped(double m, double stiffness, double gamma) {
  HamiltonianSpec h;
  h.kind = SystemKind::DampedControl;
  h.mass = m;
  h.stiffness = stiffness;
  h.gamma = gamma;
  return h;
}

void HamiltonianSpec::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive");
    }
  };
  positive(mass, "mass");
  switch (kind) {
    case SystemKind::Harmonic: positive(omega, "omega"); break;
    case SystemKind::Quartic:
      positive(k2, "k2");
      if (!(k4 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "k4 must be >= 0");
      break;
    case SystemKind::Pendulum:
      positive(length, "length");
      positive(gravity, "gravity");
      break;
    case SystemKind::DampedControl:
      positive(stiffness, "stiffness");
      if (!(gamma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 0");
      break;
  }
}

PhaseSpacePoint HamiltonianSpec::rates(const PhaseSpacePoint& x) const {
  switch (kind) {
    case SystemKind::Harmonic: return {-mass * omega * omega * x.q, x.p / mass};
    case SystemKind::Quartic: return {-(k2 * x.q + k4 * x.q * x.q * x.q), x.p / mass};
    case SystemKind::Pendulum:
      return {-mass * gravity * length * std::sin(x.q), x.p / (mass * length * length)};
    case SystemKind::DampedControl: return {-stiffness * x.q - gamma * x.p, x.p / mass};
  }
  return {};
}

double HamiltonianSpec::energy(const PhaseSpacePoint& x) const {
  switch (kind) {
    case SystemKind::Harmonic:
      return x.p * x.p / (2.0 * mass) + 0.5 * mass * omega * omega * x.q * x.q;
    case SystemKind::Quartic:
      return x.p * x.p / (2.0 * mass) + 0.5 * k2 * x.q * x.q + 0.25 * k4 * std::pow(x.q, 4);
    case SystemKind::Pendulum:
      return x.p * x.p / (2.0 * mass * length * length) +
             mass * gravity * length * (1.0 - std::cos(x.q));
    case SystemKind::DampedControl:
      return x.p * x.p / (2.0 * mass) + 0.5 * stiffness * x.q * x.q;
  }
  return 0.0;
}

Ensemble Ensemble::gaussian(std::size_t count, PhaseSpacePoint center, double sigma,
                            std::uint64_t seed) {
  if (count == 0) throw Error(ErrorKind::EmptyEnsemble, "ensemble size must be positive");
  Rng rng(seed);
  Ensemble e;
  e.points.reserve(count);
  e.weights.reserve(count);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dp = sigma * rng.normal();
    const double dq = sigma * rng.normal();
    e.points.push_back({center.p + dp, center.q + dq});
    const double w = std::exp(-(dp * dp + dq * dq) / (2.0 * sigma * sigma));
    e.weights.push_back(w);
    total += w;
  }
  for (double& w : e.weights) w /= total;
  return e;
}

PhaseSpacePoint exact_harmonic_flow(const PhaseSpacePoint& x0, double t, double mass,
                                    double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "mass and omega must be positive");
  }
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {c * x0.p - mass * omega * s * x0.q, c * x0.q + s * x0.p / (mass * omega)};
}

PhaseSpacePoint leapfrog_step(const PhaseSpacePoint& x, double dt, const HamiltonianSpec& h) {
  if (!h.is_hamiltonian()) {
    throw Error(ErrorKind::NonHamiltonianSystem, "leapfrog needs a separable Hamiltonian");
  }
  if (dt == 0.0) return x;
  PhaseSpacePoint y = x;
  y.p += 0.5 * dt * h.rates(y).p;
  y.q += dt * h.rates(y).q;
  y.p += 0.5 * dt * h.rates(y).p;
  return y;
}

PhaseSpacePoint rk4_step(const PhaseSpacePoint& x, double dt, const HamiltonianSpec& h) {
  const auto f = [&](const PhaseSpacePoint& y) { return h.rates(y); };
  const auto axpy = [](const PhaseSpacePoint& y, double a, const PhaseSpacePoint& k) {
    return PhaseSpacePoint{y.p + a * k.p, y.q + a * k.q};
  };
  const auto k1 = f(x);
  const auto k2 = f(axpy(x, 0.5 * dt, k1));
  const auto k3 = f(axpy(x, 0.5 * dt, k2));
  const auto k4 = f(axpy(x, dt, k3));
  return {x.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
          x.q + dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q)};
}

PhaseSpacePoint evolve(const PhaseSpacePoint& x, double t, double dt, const HamiltonianSpec& h) {
  const std::size_t n = step_count(t, dt);
  if (n == 0) return x;
  const double hstep = t / static_cast<double>(n);
  PhaseSpacePoint y = x;
  for (std::size_t i = 0; i < n; ++i) y = step(y, hstep, h);
  return y;
}

double divergence_field(const HamiltonianSpec& h, const PhaseSpacePoint&) {
  // pdot depends on q only and qdot on p only for every Hamiltonian kind here;
  // the damped control adds -gamma p to pdot.
  return h.kind == SystemKind::DampedControl ? -h.gamma : 0.0;
}

double flow_jacobian(const HamiltonianSpec& h, const PhaseSpacePoint& x0, double t, double dt,
                     double fd_step) {
  h.validate();
  if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "fd_step must be > 0");
  const std::size_t n = step_count(t, dt);
  Stencil s(x0, fd_step);
  if (n > 0) {
    const double hstep = t / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) s.advance(hstep, h);
  }
  return s.det(fd_step);
}

DensityReport transport_density(const Ensemble& e, const HamiltonianSpec& h, double t, double dt,
                                const TransportOptions& opts) {
  if (e.points.empty()) throw Error(ErrorKind::EmptyEnsemble, "transport_density");
  if (e.weights.size() != e.points.size()) {
    throw Error(ErrorKind::InvalidArgument, "weights and points differ in length");
  }
  h.validate();

  DensityReport report;
  report.time = t;
  report.probes.reserve(e.points.size());
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    ProbeDensity probe;
    probe.initial = e.points[i];
    probe.final = evolve(e.points[i], t, dt, h);
    probe.det_jacobian = flow_jacobian(h, e.points[i], t, dt, opts.fd_step);
    probe.rho0 = e.weights[i];
    probe.rho = probe.rho0 / std::abs(probe.det_jacobian);
    if (probe.rho0 > 0.0) {
      report.max_residual =
          std::max(report.max_residual, std::abs(probe.rho - probe.rho0) / probe.rho0);
    }
    report.probes.push_back(probe);
  }

  if (opts.knn_cross_check && e.points.size() > opts.knn_k) {
    std::vector<PhaseSpacePoint> finals;
    finals.reserve(report.probes.size());
    for (const auto& pr : report.probes) finals.push_back(pr.final);
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      const double r0 = kth_neighbour_distance(e.points, i, opts.knn_k);
      const double rt = kth_neighbour_distance(finals, i, opts.knn_k);
      // density ~ k / (pi r^2): rho_t / rho0 = (r0 / rt)^2
      const double ratio = (r0 * r0) / (rt * rt);
      report.knn_max_residual = std::max(report.knn_max_residual, std::abs(ratio - 1.0));
    }
  }
  return report;
}

std::vector<DensityReport> transport_series(const Ensemble& e, const HamiltonianSpec& h, double t,
                                            double dt, std::size_t stride, double fd_step) {
  if (e.points.empty()) throw Error(ErrorKind::EmptyEnsemble, "transport_series");
  if (stride == 0) throw Error(ErrorKind::InvalidArgument, "stride must be positive");
  h.validate();
  const std::size_t n = step_count(t, dt);
  const double hstep = n > 0 ? t / static_cast<double>(n) : 0.0;

  std::vector<Stencil> stencils;
  stencils.reserve(e.points.size());
  for (const auto& pt : e.points) stencils.emplace_back(pt, fd_step);

  std::vector<DensityReport> out;
  const auto snapshot = [&](std::size_t step_index) {
    DensityReport r;
    r.time = static_cast<double>(step_index) * hstep;
    r.probes.reserve(stencils.size());
    for (std::size_t i = 0; i < stencils.size(); ++i) {
      ProbeDensity pr;
      pr.initial = e.points[i];
      pr.final = stencils[i].x[0];
      pr.det_jacobian = stencils[i].det(fd_step);
      pr.rho0 = e.weights[i];
      pr.rho = pr.rho0 / std::abs(pr.det_jacobian);
      if (pr.rho0 > 0.0) r.max_residual = std::max(r.max_residual, std::abs(pr.rho - pr.rho0) / pr.rho0);
      r.probes.push_back(pr);
    }
    out.push_back(std::move(r));
  };

  snapshot(0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (auto& s : stencils) s.advance(hstep, h);
    if (i % stride == 0 || i == n) snapshot(i);
  }
  return out;
}

std::vector<DistanceSample> pair_distance_series(const HamiltonianSpec& h,
                                                 const PhaseSpacePoint& a,
                                                 const PhaseSpacePoint& b, double total_time,
                                                 double dt, std::size_t stride) {
  if (!(total_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be > 0");
  if (stride == 0) throw Error(ErrorKind::InvalidArgument, "stride must be positive");
  h.validate();
  const std::size_t n = step_count(total_time, dt);
  const double hstep = total_time / static_cast<double>(n);
  PhaseSpacePoint x = a;
  PhaseSpacePoint y = b;
  std::vector<DistanceSample> out;
  out.reserve(n / stride + 2);
  out.push_back({0.0, std::hypot(x.p - y.p, x.q - y.q)});
  for (std::size_t i = 1; i <= n; ++i) {
    x = step(x, hstep, h);
    y = step(y, hstep, h);
    if (i % stride == 0 || i == n) {
      out.push_back({static_cast<double>(i) * hstep, std::hypot(x.p - y.p, x.q - y.q)});
    }
  }
  return out;
}

}  // namespace liouville
