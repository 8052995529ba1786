#include "liouville/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liouville/error.hpp"

namespace liouville {

namespace {

using cplx = std::complex<double>;

constexpr double kNormTolerance = 1e-10;
constexpr std::size_t kEdgePoints = 4;
constexpr double kEdgeFraction = 1e-10;

void validate_layout(std::size_t n) {
  if (!is_power_of_two(n) || n < 128) {
    throw Error(ErrorKind::InvalidArgument,
                "grid size must be a power of two >= 128, got " + std::to_string(n));
  }
}

// Rejects states whose support reaches the q boundary or whose spectrum
// reaches the Wigner p-range edge (pi hbar / 2 dq).
void check_resolution(const WavefunctionGrid& psi) {
  const std::size_t n = psi.size();
  double peak = 0.0;
  for (const auto& v : psi.values) peak = std::max(peak, std::norm(v));
  double edge = 0.0;
  for (std::size_t i = 0; i < kEdgePoints; ++i) {
    edge = std::max({edge, std::norm(psi.values[i]), std::norm(psi.values[n - 1 - i])});
  }
  if (edge > kEdgeFraction * peak) {
    throw Error(ErrorKind::GridTooCoarse, "wavefunction support reaches the grid boundary");
  }

  Fft1d fft(n);
  std::vector<cplx> spec = psi.values;
  fft.forward(spec);
  const auto k = fft_wavenumbers(n, psi.dq);
  const double k_edge = 0.9 * std::numbers::pi / (2.0 * psi.dq);
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double w = std::norm(spec[m]);
    total += w;
    if (std::abs(k[m]) > k_edge) outside += w;
  }
  if (outside > kEdgeFraction * total) {
    throw Error(ErrorKind::GridTooCoarse, "momentum content reaches the Wigner p-range edge");
  }
}

// d^order/dx^order along contiguous rows of length n, spectrally.
void spectral_derivative_rows(std::vector<double>& field, std::size_t n, double dx, int order) {
  Fft1d fft(n);
  const auto k = fft_wavenumbers(n, dx);
  std::vector<cplx> multiplier(n);
  for (std::size_t m = 0; m < n; ++m) {
    multiplier[m] = std::pow(cplx(0.0, k[m]), order) / static_cast<double>(n);
  }
  // the Nyquist mode has no odd-derivative partner
  if (order % 2 == 1) multiplier[n / 2] = 0.0;
  std::vector<cplx> row(n);
  for (std::size_t r = 0; r < field.size() / n; ++r) {
    double* base = field.data() + r * n;
    std::copy(base, base + n, row.begin());
    fft.forward(row);
    for (std::size_t m = 0; m < n; ++m) row[m] *= multiplier[m];
    fft.backward(row);
    for (std::size_t m = 0; m < n; ++m) base[m] = row[m].real();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double WavefunctionGrid::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * dq;
}

void WavefunctionGrid::normalize() {
  const double s = std::sqrt(norm());
  if (!(s > 0.0)) throw Error(ErrorKind::NotNormalized, "zero wavefunction");
  for (auto& v : values) v /= s;
}

WavefunctionGrid WavefunctionGrid::sample(double q_min, double q_max, std::size_t n,
                                          const std::function<cplx(double)>& f, double hbar) {
  validate_layout(n);
  if (!(q_max > q_min)) throw Error(ErrorKind::InvalidArgument, "q_max must exceed q_min");
  if (!(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  WavefunctionGrid g;
  g.q_min = q_min;
  g.dq = (q_max - q_min) / static_cast<double>(n);
  g.hbar = hbar;
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.values[i] = f(g.q(i));
  g.normalize();
  return g;
}

WavefunctionGrid WavefunctionGrid::harmonic_eigenstate(int level, double mass, double omega,
                                                       double hbar, double q_min, double q_max,
                                                       std::size_t n) {
  if (level != 0 && level != 1) {
    throw Error(ErrorKind::InvalidArgument, "only levels 0 and 1 are provided");
  }
  const double scale = std::sqrt(mass * omega / hbar);
  return sample(
      q_min, q_max, n,
      [=](double q) {
        const double xi = scale * q;
        const double g = std::exp(-0.5 * xi * xi);
        return cplx(level == 0 ? g : std::numbers::sqrt2 * xi * g);
      },
      hbar);
}

WavefunctionGrid WavefunctionGrid::gaussian(double q0, double p0, double sigma, double hbar,
                                            double q_min, double q_max, std::size_t n) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  return sample(
      q_min, q_max, n,
      [=](double q) {
        const double d = q - q0;
        return std::exp(cplx(-d * d / (4.0 * sigma * sigma), p0 * q / hbar));
      },
      hbar);
}

WavefunctionGrid WavefunctionGrid::coherent_state(double q0, double p0, double mass, double omega,
                                                  double hbar, double q_min, double q_max,
                                                  std::size_t n) {
  return gaussian(q0, p0, std::sqrt(hbar / (2.0 * mass * omega)), hbar, q_min, q_max, n);
}

double WignerGrid::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dq * dp;
}

std::vector<double> WignerGrid::q_marginal() const {
  std::vector<double> out(n, 0.0);
  for (std::size_t iq = 0; iq < n; ++iq) {
    double s = 0.0;
    for (std::size_t ip = 0; ip < n; ++ip) s += at(iq, ip);
    out[iq] = s * dp;
  }
  return out;
}

std::vector<double> WignerGrid::p_marginal() const {
  std::vector<double> out(n, 0.0);
  for (std::size_t iq = 0; iq < n; ++iq)
    for (std::size_t ip = 0; ip < n; ++ip) out[ip] += at(iq, ip);
  for (double& v : out) v *= dq;
  return out;
}

PotentialSpec PotentialSpec::harmonic(double mass, double omega) {
  PotentialSpec v;
  v.c[2] = 0.5 * mass * omega * omega;
  return v;
}

PotentialSpec PotentialSpec::quartic(double k2, double k4) {
  PotentialSpec v;
  v.c[2] = 0.5 * k2;
  v.c[4] = 0.25 * k4;
  return v;
}

double PotentialSpec::value(double q) const { return derivative(0, q); }

double PotentialSpec::derivative(int order, double q) const {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  double acc = 0.0;
  // Horner over the differentiated coefficients c_i * i!/(i-order)!
  for (int i = static_cast<int>(c.size()) - 1; i >= order; --i) {
    double coef = c[static_cast<std::size_t>(i)];
    for (int j = 0; j < order; ++j) coef *= static_cast<double>(i - j);
    acc = acc * q + coef;
  }
  return acc;
}

bool PotentialSpec::derivative_vanishes(int order) const {
  for (int i = std::max(order, 0); i < static_cast<int>(c.size()); ++i) {
    if (c[static_cast<std::size_t>(i)] != 0.0) return false;
  }
  return true;
}

int PotentialSpec::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] != 0.0) return i;
  }
  return 0;
}

WignerGrid wigner_transform(const WavefunctionGrid& psi) {
  const std::size_t n = psi.size();
  validate_layout(n);
  const double norm_dev = std::abs(psi.norm() - 1.0);
  if (norm_dev > kNormTolerance) {
    throw Error(ErrorKind::NotNormalized, "sum |psi|^2 dq deviates by " + std::to_string(norm_dev));
  }
  check_resolution(psi);

  WignerGrid w;
  w.n = n;
  w.q_min = psi.q_min;
  w.dq = psi.dq;
  w.hbar = psi.hbar;
  w.dp = std::numbers::pi * psi.hbar / (static_cast<double>(n) * psi.dq);
  w.p_min = -static_cast<double>(n / 2) * w.dp;
  w.values.assign(n * n, 0.0);

  Fft1d fft(n);
  std::vector<cplx> column(n);
  const double scale = psi.dq / (std::numbers::pi * psi.hbar);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t j = 0; j < sn; ++j) {
    for (std::ptrdiff_t m = 0; m < sn; ++m) {
      const std::ptrdiff_t k = m < sn / 2 ? m : m - sn;
      const std::ptrdiff_t lo = j - k;
      const std::ptrdiff_t hi = j + k;
      column[static_cast<std::size_t>(m)] =
          (lo >= 0 && lo < sn && hi >= 0 && hi < sn)
              ? std::conj(psi.values[static_cast<std::size_t>(lo)]) *
                    psi.values[static_cast<std::size_t>(hi)]
              : cplx{};
    }
    fft.forward(column);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t ip = (m + n / 2) % n;
      w.values[static_cast<std::size_t>(j) * n + ip] = scale * column[m].real();
      w.imag_residue = std::max(w.imag_residue, scale * std::abs(column[m].imag()));
    }
  }
  return w;
}

SplitStepPropagator::SplitStepPropagator(const WavefunctionGrid& layout, const PotentialSpec& v,
                                         double dt, double mass)
    : fft_(layout.size()), dt_(dt) {
  validate_layout(layout.size());
  if (!(mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  const std::size_t n = layout.size();
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(v.value(layout.q(i))));
  const double courant = std::abs(dt) * vmax / layout.hbar;
  if (!(courant < 0.1)) {
    throw Error(ErrorKind::StabilityViolation,
                "dt max|V| / hbar = " + std::to_string(courant) + " (must be < 0.1)");
  }
  const double hbar = layout.hbar;
  half_potential_.resize(n);
  full_potential_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vq = v.value(layout.q(i));
    half_potential_[i] = std::polar(1.0, -0.5 * vq * dt / hbar);
    full_potential_[i] = std::polar(1.0, -vq * dt / hbar);
  }
  const auto k = fft_wavenumbers(n, layout.dq);
  kinetic_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    kinetic_[m] = std::polar(1.0, -hbar * k[m] * k[m] * dt / (2.0 * mass)) /
                  static_cast<double>(n);
  }
}

void SplitStepPropagator::advance(WavefunctionGrid& psi, std::size_t steps) const {
  if (steps == 0) return;
  if (psi.size() != kinetic_.size()) throw Error(ErrorKind::InvalidArgument, "grid mismatch");
  auto& v = psi.values;
  const std::size_t n = v.size();
  // V/2 K V K ... K V/2: interior half-steps merge into full potential kicks
  for (std::size_t i = 0; i < n; ++i) v[i] *= half_potential_[i];
  for (std::size_t s = 0; s < steps; ++s) {
    fft_.forward(v);
    for (std::size_t m = 0; m < n; ++m) v[m] *= kinetic_[m];
    fft_.backward(v);
    const auto& kick = (s + 1 == steps) ? half_potential_ : full_potential_;
    for (std::size_t i = 0; i < n; ++i) v[i] *= kick[i];
  }
}

WavefunctionGrid schrodinger_evolve(const WavefunctionGrid& psi, const PotentialSpec& v, double dt,
                                    std::size_t steps, double mass) {
  SplitStepPropagator prop(psi, v, dt, mass);
  WavefunctionGrid out = psi;
  prop.advance(out, steps);
  return out;
}

MoyalTerms moyal_terms(const WignerGrid& rho, const PotentialSpec& v, int lambda_max) {
  if (lambda_max != 1 && lambda_max != 3 && lambda_max != 5) {
    throw Error(ErrorKind::InvalidArgument, "lambda_max must be 1, 3 or 5");
  }
  const std::size_t n = rho.n;
  MoyalTerms out;
  for (int lambda = 1; lambda <= lambda_max; lambda += 2) {
    std::vector<double> field(n * n, 0.0);
    if (!v.derivative_vanishes(lambda)) {
      field = rho.values;
      spectral_derivative_rows(field, n, rho.dp, lambda);
      // (hbar / 2i)^(lambda-1) is real for odd lambda
      const int half = (lambda - 1) / 2;
      const double prefactor = std::pow(0.5 * rho.hbar, lambda - 1) * (half % 2 == 0 ? 1.0 : -1.0) /
                               factorial(lambda);
      for (std::size_t iq = 0; iq < n; ++iq) {
        const double coef = prefactor * v.derivative(lambda, rho.q(iq));
        for (std::size_t ip = 0; ip < n; ++ip) field[iq * n + ip] *= coef;
      }
    }
    out.fields.push_back(std::move(field));
  }
  return out;
}

std::vector<double> kinetic_transport(const WignerGrid& rho, double mass) {
  const std::size_t n = rho.n;
  // transpose so q runs along contiguous rows
  std::vector<double> t(n * n);
  for (std::size_t iq = 0; iq < n; ++iq)
    for (std::size_t ip = 0; ip < n; ++ip) t[ip * n + iq] = rho.values[iq * n + ip];
  spectral_derivative_rows(t, n, rho.dq, 1);
  std::vector<double> out(n * n);
  for (std::size_t iq = 0; iq < n; ++iq)
    for (std::size_t ip = 0; ip < n; ++ip)
      out[iq * n + ip] = -(rho.p(ip) / mass) * t[ip * n + iq];
  return out;
}

double field_norm(const WignerGrid& layout, const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s * layout.dq * layout.dp);
}

CompressibilityReport wigner_compressibility(const WavefunctionGrid& psi0, const PotentialSpec& v,
                                             double total_time, double dt, std::size_t samples,
                                             double mass) {
  if (!(total_time >= 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be >= 0");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (samples == 0) samples = 1;
  const auto total_steps = static_cast<std::size_t>(std::llround(total_time / dt));
  const std::size_t per_sample = std::max<std::size_t>(1, total_steps / samples);
  const double step = total_steps > 0 ? total_time / static_cast<double>(per_sample * samples) : dt;

  SplitStepPropagator prop(psi0, v, step, mass);
  WavefunctionGrid psi = psi0;
  CompressibilityReport report;
  for (std::size_t s = 0; s <= samples; ++s) {
    if (s > 0) {
      if (total_steps == 0) break;
      prop.advance(psi, per_sample);
    }
    const WignerGrid rho = wigner_transform(psi);
    const MoyalTerms terms = moyal_terms(rho, v, 5);
    CompressibilitySample sample;
    sample.t = static_cast<double>(s * per_sample) * step;
    sample.lambda1_norm = field_norm(rho, terms.order(1));
    sample.lambda3_norm = field_norm(rho, terms.order(3));
    sample.lambda5_norm = field_norm(rho, terms.order(5));
    std::vector<double> higher(terms.order(3));
    for (std::size_t i = 0; i < higher.size(); ++i) higher[i] += terms.order(5)[i];
    const double higher_norm = field_norm(rho, higher);
    sample.metric = higher_norm == 0.0 ? 0.0 : higher_norm / sample.lambda1_norm;
    report.max_metric = std::max(report.max_metric, sample.metric);
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace liouville
