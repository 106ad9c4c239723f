#include "hhgq/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hhgq/errors.hpp"
#include "hhgq/parallel.hpp"

namespace hhgq {

using std::numbers::pi;
using cd = std::complex<double>;

void AtomParams::validate() const {
  if (!(ip > 0.0) || !std::isfinite(ip)) throw ConfigError("engine.ip", "must be finite and > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("engine.epsilon", "must be > 0");
  if (!(history_cycles > 0.0)) throw ConfigError("engine.history_cycles", "must be > 0");
  if (!(taper_fraction >= 0.0 && taper_fraction <= 1.0)) {
    throw ConfigError("engine.taper_fraction", "must lie in [0, 1]");
  }
}

void ToyDipoleParams::validate() const {
  if (!(e_ref > 0.0) || !std::isfinite(e_ref)) throw ConfigError("engine.e_ref", "must be finite and > 0");
  for (const ToyTerm& t : terms) {
    if (t.q < 1 || t.q % 2 == 0) {
      throw ConfigError("engine.terms.q", "toy harmonic orders must be odd and >= 1, got " + std::to_string(t.q));
    }
    if (t.p < 1) throw ConfigError("engine.terms.p", "power must be >= 1");
    if (!std::isfinite(t.c)) throw ConfigError("engine.terms.c", "must be finite");
  }
}

ToyDipoleParams ToyDipoleParams::monomial(const std::vector<int>& orders, double c, double e_ref) {
  ToyDipoleParams params;
  params.e_ref = e_ref;
  for (int q : orders) params.terms.push_back({q, c, q});
  params.validate();
  return params;
}

double ponderomotive_energy(double amplitude, double omega) {
  return amplitude * amplitude / (4.0 * omega * omega);
}

double cutoff_order(double ip, double amplitude, double omega) {
  return (ip + 3.17 * ponderomotive_energy(amplitude, omega)) / omega;
}

int sfa_min_samples_per_cycle(const FieldConfig& config, const AtomParams& atom) {
  const double q_expected = std::max(1.0, cutoff_order(atom.ip, config.amplitude(), config.omega));
  return static_cast<int>(std::ceil(40.0 * q_expected));
}

ComplexSeries toy_dipole(const FieldConfig& config, const TimeGrid& grid, const ToyDipoleParams& params) {
  config.validate();
  params.validate();
  ComplexSeries out{grid, std::vector<cd>(grid.size())};
  const double ratio = config.amplitude() / params.e_ref;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    const double env = envelope_value(config, t);
    const double theta = config.omega * t + config.phase;
    double d = 0.0;
    for (const ToyTerm& term : params.terms) {
      d += term.c * std::pow(ratio * env, term.p) * std::cos(term.q * theta);
    }
    out.values[i] = d;
  }
  return out;
}

namespace {

// Hydrogen-like ground-state dipole matrix element up to the constant factor
// 2^{7/2} (2 Ip)^{5/4} / pi, which is applied once per product.
inline double matrix_element_shape(double v, double two_ip) {
  const double denom = v * v + two_ip;
  return v / (denom * denom * denom);
}

}  // namespace

ComplexSeries sfa_dipole(const FieldConfig& config, const TimeGrid& grid, const AtomParams& atom) {
  config.validate();
  atom.validate();
  ComplexSeries out{grid, std::vector<cd>(grid.size(), 0.0)};
  if (config.alpha_abs == 0.0) return out;

  const double dt = grid.dt();
  const int min_spc = sfa_min_samples_per_cycle(config, atom);
  if (dt > config.period() / min_spc * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "SFA grid under-resolved: dt=" << dt << " but the expected cutoff needs dt <= "
        << config.period() / min_spc << " (" << min_spc << " samples per cycle)";
    throw ResolutionError(msg.str());
  }

  const long history = std::lround(atom.history_cycles * config.period() / dt);
  if (history < 2) throw ResolutionError("SFA excursion window shorter than two time steps");

  // Field, vector potential (E = -dA/dt) and running integrals of A, A^2 on
  // the grid extended `history` steps into the past.
  const std::size_t n = grid.size();
  const std::size_t ext = n + static_cast<std::size_t>(history);
  std::vector<double> e(ext), a(ext), int_a(ext, 0.0), int_a2(ext, 0.0);
  const bool flat = config.envelope.kind == EnvelopeKind::Flat;
  for (std::size_t m = 0; m < ext; ++m) {
    const double s = grid.t0() + (static_cast<double>(m) - history) * dt;
    e[m] = field_value(config, s);
    if (flat) a[m] = -config.amplitude() * std::cos(config.omega * s + config.phase) / config.omega;
  }
  if (!flat) {
    a[0] = 0.0;
    for (std::size_t m = 1; m < ext; ++m) a[m] = a[m - 1] - 0.5 * dt * (e[m - 1] + e[m]);
  }
  for (std::size_t m = 1; m < ext; ++m) {
    int_a[m] = int_a[m - 1] + 0.5 * dt * (a[m - 1] + a[m]);
    int_a2[m] = int_a2[m - 1] + 0.5 * dt * (a[m - 1] * a[m - 1] + a[m] * a[m]);
  }

  // tau-dependent factors: trapezoid weight, taper and the wave-packet
  // spreading factor (pi / (eps + i tau / 2))^{3/2}.
  const double norm = std::pow(2.0, 3.5) * std::pow(2.0 * atom.ip, 1.25) / pi;
  std::vector<cd> pref(history + 1, 0.0);
  const double taper_start = 1.0 - atom.taper_fraction;
  for (long j = 1; j <= history; ++j) {
    const double tau = j * dt;
    const double x = static_cast<double>(j) / history;
    double w = (j == history) ? 0.5 : 1.0;
    if (atom.taper_fraction > 0.0 && x > taper_start) {
      const double c = std::cos(0.5 * pi * (x - taper_start) / atom.taper_fraction);
      w *= c * c;
    }
    pref[j] = w * dt * norm * norm * std::pow(pi / cd(atom.epsilon, 0.5 * tau), 1.5);
  }

  const double two_ip = 2.0 * atom.ip;
  const std::size_t block = 64;
  const std::size_t n_blocks = (n + block - 1) / block;
  parallel_for(n_blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      const std::size_t mt = i + static_cast<std::size_t>(history);
      cd acc = 0.0;
      for (long j = 1; j <= history; ++j) {
        const std::size_t mb = mt - static_cast<std::size_t>(j);
        const double tau = j * dt;
        const double p = -(int_a[mt] - int_a[mb]) / tau;
        const double action = atom.ip * tau + 0.5 * ((int_a2[mt] - int_a2[mb]) - tau * p * p);
        const double amp = matrix_element_shape(p + a[mt], two_ip) *
                           matrix_element_shape(p + a[mb], two_ip) * e[mb];
        acc += pref[j] * amp * std::polar(1.0, -action);
      }
      // x(t) = i X + c.c.; the dipole of the electron is -x(t).
      const double d = 2.0 * acc.imag();
      if (!std::isfinite(d)) {
        std::ostringstream msg;
        msg << "SFA inner integral did not converge at t=" << grid.at(i);
        throw QuadratureError(msg.str());
      }
      out.values[i] = d;
    }
  });
  return out;
}

ComplexSeries DipoleEngine::evaluate(const FieldConfig& config, const TimeGrid& grid) const {
  if (const auto* toy = std::get_if<ToyDipoleParams>(&params_)) return toy_dipole(config, grid, *toy);
  return sfa_dipole(config, grid, std::get<AtomParams>(params_));
}

std::string DipoleEngine::name() const { return is_toy() ? "toy" : "sfa"; }

double covariance_check(const DipoleEngine& engine, const FieldConfig& config, const TimeGrid& grid,
                        double delta_phi) {
  if (config.envelope.kind != EnvelopeKind::Flat) {
    throw UnsupportedEnvelope(std::string("phase covariance needs a flat envelope, got ") +
                              to_string(config.envelope.kind));
  }
  FieldConfig shifted = config;
  shifted.phase += delta_phi;
  const ComplexSeries d_phi = engine.evaluate(shifted, grid);
  const ComplexSeries d_ref = engine.evaluate(config, grid.shifted(delta_phi / config.omega));
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dev = std::max(dev, std::abs(d_phi.values[i] - d_ref.values[i]));
    scale = std::max(scale, std::abs(d_ref.values[i]));
  }
  return scale > 0.0 ? dev / scale : dev;
}

}  // namespace hhgq
