#include "liouville/lab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "liouville/classical.hpp"
#include "liouville/ergodic.hpp"
#include "liouville/error.hpp"
#include "liouville/groupspace.hpp"
#include "liouville/pumping.hpp"
#include "liouville/random.hpp"
#include "liouville/wigner.hpp"

namespace liouville::lab {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

GroupCoordinates coords_from(const RunConfig& c, const std::string& prefix = "") {
  return {c.number(prefix + "phi"), c.number(prefix + "theta"), c.number(prefix + "omega")};
}

EulerAngles random_euler(Rng& rng, double margin) {
  return {rng.uniform(-kPi, kPi), rng.uniform(margin, kPi - margin), rng.uniform(-kPi, kPi)};
}

QuantumState random_state(Rng& rng) {
  return QuantumState::normalized({rng.normal(), rng.normal()}, {rng.normal(), rng.normal()});
}

/// Quantum pair distance after k * stride applications of U, one row per classical sample.
std::vector<double> quantum_pair_distances(const UnitaryOperator& u, QuantumState a,
                                           QuantumState b, std::size_t rows, std::size_t stride) {
  std::vector<double> out;
  out.reserve(rows);
  std::size_t applied = 0;
  for (std::size_t k = 0; k < rows; ++k) {
    for (; applied < k * stride; ++applied) {
      a = u * a;
      b = u * b;
    }
    out.push_back(state_distance(a, b));
  }
  return out;
}

HamiltonianSpec system_from(const RunConfig& c) {
  const std::string kind = c.text("system");
  const double m = c.number("mass");
  if (kind == "harmonic") return HamiltonianSpec::harmonic(m, c.number("omega"));
  if (kind == "quartic") return HamiltonianSpec::quartic(m, c.number("k2"), c.number("k4"));
  if (kind == "pendulum") return HamiltonianSpec::pendulum(m, c.number("length"), c.number("gravity"));
  if (kind == "damped") return HamiltonianSpec::damped(m, c.number("stiffness"), c.number("gamma"));
  throw ConfigError("system must be harmonic, quartic, pendulum or damped");
}

PotentialSpec potential_from(const RunConfig& c) {
  const std::string kind = c.text("potential");
  if (kind == "free") return PotentialSpec::free();
  if (kind == "harmonic") return PotentialSpec::harmonic(c.number("mass"), c.number("omega"));
  if (kind == "quartic") return PotentialSpec::quartic(c.number("k2"), c.number("k4"));
  throw ConfigError("potential must be free, harmonic or quartic");
}

ExperimentResult haar_check(const RunConfig& c) {
  const std::size_t samples = c.count("samples");
  const double step = c.number("step");
  const double margin = c.number("theta_margin");
  if (!(margin > 0.0 && margin < kPi / 2)) throw ConfigError("theta_margin must lie in (0, pi/2)");
  Rng rng(stream_seed(c.seed, "haar-check"));

  Table t{"haar_check",
          {"sample_id", "theta", "theta_prime", "jacobian_fd", "jacobian_analytic", "rel_err"},
          {}};
  double max_rel = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    EulerAngles fixed;
    EulerAngles at;
    double theta_prime = 0.0;
    do {
      fixed = random_euler(rng, margin);
      at = random_euler(rng, margin);
      theta_prime = compose_so3(fixed, at).angles.theta;
    } while (theta_prime < margin || theta_prime > kPi - margin);
    const double fd = so3_translation_jacobian(fixed, at, step);
    const double analytic = std::sin(at.theta) / std::sin(theta_prime);
    const double rel = std::abs(fd - analytic) / std::abs(analytic);
    max_rel = std::max(max_rel, rel);
    t.add({static_cast<double>(i), at.theta, theta_prime, fd, analytic, rel});
  }
  ExperimentResult r;
  r.tables.push_back(std::move(t));
  r.summary = {{"samples", samples}, {"max_rel_err", max_rel}};
  return r;
}

ExperimentResult classical(const RunConfig& c) {
  const HamiltonianSpec h = system_from(c);
  const double total = c.number("t");
  const double dt = c.number("dt");
  const std::size_t stride = c.count("stride");
  const PhaseSpacePoint center{c.number("p0"), c.number("q0")};
  const Ensemble e =
      Ensemble::gaussian(c.count("ensemble"), center, c.number("sigma"), stream_seed(c.seed, "classical"));

  const auto reports = transport_series(e, h, total, dt, stride, c.number("fd_step"));
  Table jac{"classical_jacobian", {"t", "det_jacobian", "density_residual"}, {}};
  double worst_det = 0.0;
  double worst_residual = 0.0;
  for (const auto& rep : reports) {
    double mean_det = 0.0;
    for (const auto& p : rep.probes) mean_det += p.det_jacobian;
    mean_det /= static_cast<double>(rep.probes.size());
    const double expected = h.is_hamiltonian() ? 1.0 : std::exp(-h.gamma * rep.time);
    worst_det = std::max(worst_det, std::abs(mean_det - expected));
    worst_residual = std::max(worst_residual, rep.max_residual);
    jac.add({rep.time, mean_det, rep.max_residual});
  }

  const double sep = c.number("separation");
  const auto pair = pair_distance_series(h, center, {center.p, center.q + sep}, total, dt, stride);
  const UnitaryOperator u = build_unitary(coords_from(c, "u_"));
  const auto quantum = quantum_pair_distances(
      u, QuantumState::ground(), QuantumState::normalized(std::cos(sep), std::sin(sep)),
      pair.size(), stride);
  Table dist{"distance_series", {"t", "distance_classical", "distance_quantum"}, {}};
  double max_ratio = 0.0;
  for (std::size_t k = 0; k < pair.size(); ++k) {
    dist.add({pair[k].t, pair[k].distance, quantum[k]});
    max_ratio = std::max(max_ratio, pair[k].distance / pair.front().distance);
  }

  ExperimentResult r;
  r.tables.push_back(std::move(jac));
  r.tables.push_back(std::move(dist));
  r.summary = {{"system", c.text("system")},
               {"max_det_deviation", worst_det},
               {"max_density_residual", worst_residual},
               {"max_pair_distance_ratio", max_ratio}};
  return r;
}

ExperimentResult wigner(const RunConfig& c) {
  const double mass = c.number("mass");
  const auto psi0 = WavefunctionGrid::coherent_state(
      c.number("q0"), c.number("p0"), mass, c.number("omega"), c.number("hbar"),
      c.number("q_min"), c.number("q_max"), c.count("n"));
  const auto report = wigner_compressibility(psi0, potential_from(c), c.number("t"),
                                             c.number("dt"), c.count("samples"), mass);
  Table t{"wigner_compressibility",
          {"t", "lambda1_norm", "lambda3_norm", "lambda5_norm", "metric"},
          {}};
  for (const auto& s : report.samples) {
    t.add({s.t, s.lambda1_norm, s.lambda3_norm, s.lambda5_norm, s.metric});
  }
  ExperimentResult r;
  r.tables.push_back(std::move(t));
  r.summary = {{"potential", c.text("potential")}, {"max_metric", report.max_metric}};
  return r;
}

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t decade = 1000; decade <= n; decade *= 10) {
    for (std::uint64_t m : {1, 2, 5}) {
      if (m * decade <= n) out.push_back(m * decade);
    }
  }
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

ExperimentResult ergodic(const RunConfig& c) {
  const std::size_t n = c.count("n");
  const std::size_t bins = c.count("bins");
  if (n == 0) throw ConfigError("n must be positive");
  if (bins == 0 || bins > 200) throw ConfigError("bins must lie in [1, 200]");
  const UnitaryOperator u = build_unitary(canonicalize(coords_from(c)));
  const auto orbit = iterate_orbit(u, n - 1);
  const HaarHistogram h = haar_histogram(orbit, bins);
  const AngleHistogram angle = orbit_angle_histogram(orbit, bins);
  const ControlHistogram control = non_invariant_control(orbit, bins);

  Table hist{"ergodic_hist",
             {"bin_phi", "bin_theta", "bin_omega", "count", "haar_mass", "normalized_occupancy"},
             {}};
  for (std::size_t i = 0; i < bins; ++i)
    for (std::size_t j = 0; j < bins; ++j)
      for (std::size_t k = 0; k < bins; ++k) {
        const std::size_t b = h.index(i, j, k);
        if (h.counts[b] == 0 && h.haar_weights[b] == 0.0) continue;
        hist.add({static_cast<double>(i), static_cast<double>(j), static_cast<double>(k),
                  static_cast<double>(h.counts[b]), h.haar_weights[b], h.normalized_occupancy[b]});
      }

  Table flat{"ergodic_flatness", {"n", "flatness_haar", "flatness_control"}, {}};
  for (const auto& p : flatness_series(u, decade_checkpoints(n), bins)) {
    flat.add({static_cast<double>(p.n), p.flatness_haar, p.flatness_control});
  }

  const OrbitClosure closure = OrbitClosure::of(u);
  ExperimentResult r;
  r.tables.push_back(std::move(hist));
  r.tables.push_back(std::move(flat));
  r.summary = {{"samples", orbit.size()},
               {"rotation_angle", closure.rotation_angle()},
               {"period", closure.period()},
               {"achievable_bins", h.achievable_bins()},
               {"flatness_3d", h.flatness},
               {"flatness_angle", angle.flatness},
               {"flatness_control", control.flatness},
               {"flatness_control_weighted", control.weighted_flatness}};
  return r;
}

ExperimentResult pumping(const RunConfig& c) {
  const std::size_t n = c.count("n");
  const std::size_t stride = c.count("stride");
  if (n == 0 || stride == 0) throw ConfigError("n and stride must be positive");
  const GroupCoordinates coords = coords_from(c);
  const PumpingSeries s = pumping_series(coords, n);
  const double p_g = geometric_pumping_closed_form(coords.phi).value;
  Table t{"pumping", {"n", "p_n", "running_average", "p_G_closed_form"}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    if (k % stride == 0 || k + 1 == n) {
      t.add({static_cast<double>(k), s.p_n[k], s.running_average[k], p_g});
    }
  }
  ExperimentResult r;
  r.summary = {{"running_average", s.running_average.back()}, {"p_G", p_g}};
  if (n >= 10'000) {
    const PumpingComparison cmp = compare_average_to_closed_form(coords, n);
    r.summary["tail_oscillation"] = cmp.tail_oscillation;
    r.summary["converged"] = cmp.converged;
    r.summary["orbit_average"] = cmp.orbit_average;
    r.summary["oracle_deviation"] = cmp.oracle_deviation;
    r.summary["closed_form_deviation"] = cmp.closed_form_deviation;
  }
  r.tables.push_back(std::move(t));

  const std::size_t scan_points = c.count("scan_points");
  if (scan_points > 0) {
    std::vector<double> phis;
    for (std::size_t k = 1; k <= scan_points; ++k) {
      phis.push_back(kPi * static_cast<double>(k) / static_cast<double>(scan_points));
    }
    Table scan{"pumping_scan", {"slice", "phi", "theta", "omega", "orbit_average", "p_G_closed_form", "deviation"}, {}};
    double worst[3] = {0.0, 0.0, 0.0};
    for (const SliceScanRow& row : pumping_slice_scan(phis)) {
      const auto id = static_cast<std::size_t>(row.slice);
      worst[id] = std::max(worst[id], std::abs(row.deviation));
      scan.add({static_cast<double>(id), row.coords.phi, row.coords.theta, row.coords.omega,
                row.orbit_average, row.closed_form, row.deviation});
    }
    r.summary["scan_max_deviation"] = {{"theta_equals_phi", worst[0]},
                                       {"theta_half_pi", worst[1]},
                                       {"theta_half_phi", worst[2]}};
    r.tables.push_back(std::move(scan));
  }
  return r;
}

ExperimentResult metric(const RunConfig& c) {
  const std::size_t n = c.count("n");
  const std::size_t stride = c.count("stride");
  const double tau = c.number("tau");
  if (n == 0 || stride == 0) throw ConfigError("n and stride must be positive");
  const UnitaryOperator u = build_unitary(coords_from(c));
  Rng rng(stream_seed(c.seed, "metric"));
  QuantumState a = random_state(rng);
  QuantumState b = random_state(rng);
  UnitaryOperator ga = build_unitary({rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)});
  UnitaryOperator gb = build_unitary({rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)});
  const double d_state0 = state_distance(a, b);
  const double d_group0 = group_distance(ga, gb);

  const double sep = c.number("separation");
  const PhaseSpacePoint x0{c.number("p0"), c.number("q0")};
  const auto pair = pair_distance_series(HamiltonianSpec::quartic(1.0, c.number("k2"), c.number("k4")),
                                         x0, {x0.p, x0.q + sep}, static_cast<double>(n) * tau, tau,
                                         stride);

  Table t{"distance_series", {"t", "distance_classical", "distance_quantum"}, {}};
  double drift_state = 0.0;
  double drift_group = 0.0;
  std::size_t row = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      a = u * a;
      b = u * b;
      ga = u * ga;
      gb = u * gb;
      if (k % kReunitarizeEvery == 0) {
        a = QuantumState::normalized(a.amp[0], a.amp[1]);
        b = QuantumState::normalized(b.amp[0], b.amp[1]);
        ga = polar_project(ga);
        gb = polar_project(gb);
      }
    }
    const double ds = state_distance(a, b);
    drift_state = std::max(drift_state, std::abs(ds - d_state0));
    drift_group = std::max(drift_group, std::abs(group_distance(ga, gb) - d_group0));
    if ((k % stride == 0 || k == n) && row < pair.size()) {
      t.add({pair[row].t, pair[row].distance, ds});
      ++row;
    }
  }
  double max_ratio = 0.0;
  for (const auto& s : pair) max_ratio = std::max(max_ratio, s.distance / pair.front().distance);

  ExperimentResult r;
  r.tables.push_back(std::move(t));
  r.summary = {{"steps", n},
               {"state_distance_drift", drift_state},
               {"group_distance_drift", drift_group},
               {"classical_distance_ratio", max_ratio}};
  return r;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotConverged:
    case ErrorKind::NearSingular:
    case ErrorKind::NotNormalized:
    case ErrorKind::GridTooCoarse:
    case ErrorKind::NonUnitaryInput:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  switch (config.experiment) {
    case Experiment::HaarCheck: return haar_check(config);
    case Experiment::Classical: return classical(config);
    case Experiment::Wigner: return wigner(config);
    case Experiment::Ergodic: return ergodic(config);
    case Experiment::Pumping: return pumping(config);
    case Experiment::Metric: return metric(config);
  }
  throw ConfigError("unknown experiment");
}

int run(const RunConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  try {
    std::filesystem::create_directories(config.out_dir);
    const ExperimentResult result = run_experiment(config);
    json files = json::array();
    for (const auto& t : result.tables) {
      files.push_back(t.write(config.out_dir, config.format).filename().string());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json manifest = {{"tool", "liouville_lab"},
                           {"version", kToolVersion},
                           {"config", config.to_json()},
                           {"wall_clock_seconds", seconds},
                           {"files", files},
                           {"summary", result.summary}};
    std::ofstream out(config.out_dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) throw ConfigError("cannot write manifest.json");
    log << to_string(config.experiment) << ": " << result.summary.dump() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    log << "filesystem error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace liouville::lab
