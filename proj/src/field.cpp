#include "hhgq/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hhgq/errors.hpp"

namespace hhgq {

using std::numbers::pi;

const char* to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::Flat: return "flat";
    case EnvelopeKind::SinSquared: return "sin2";
    case EnvelopeKind::Gaussian: return "gaussian";
  }
  return "unknown";
}

double FieldConfig::period() const { return 2.0 * pi / omega; }

FieldConfig FieldConfig::with_alpha(std::complex<double> alpha) const {
  FieldConfig out = *this;
  out.alpha_abs = std::abs(alpha);
  out.phase = std::arg(alpha);
  return out;
}

void FieldConfig::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa", "must be finite and > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega", "must be finite and > 0");
  if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) {
    throw ConfigError("alpha_abs", "must be finite and >= 0");
  }
  if (!std::isfinite(amplitude())) throw ConfigError("alpha_abs", "2*kappa*alpha_abs overflows");
  if (!std::isfinite(phase)) throw ConfigError("phase", "must be finite");
  if (n_cycles < 1) throw ConfigError("n_cycles", "must be >= 1");
  switch (envelope.kind) {
    case EnvelopeKind::Flat: break;
    case EnvelopeKind::SinSquared:
      if (envelope.cycles < 1) throw ConfigError("envelope_cycles", "must be >= 1");
      break;
    case EnvelopeKind::Gaussian:
      if (!(envelope.fwhm_cycles > 0.0)) throw ConfigError("fwhm_cycles", "must be > 0");
      break;
  }
}

TimeGrid::TimeGrid(double t0, double dt, std::size_t n) : t0_(t0), dt_(dt), n_(n) {
  if (!std::isfinite(t0)) throw ConfigError("t0", "must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be finite and > 0");
  if (n < 2) throw ConfigError("n", "time grid needs at least 2 samples");
}

TimeGrid TimeGrid::cycles(double omega, int n_cycles, int samples_per_cycle, double t0) {
  if (!(omega > 0.0)) throw ConfigError("omega", "must be > 0");
  if (n_cycles < 1) throw ConfigError("n_cycles", "must be >= 1");
  if (samples_per_cycle < 2) throw ConfigError("samples_per_cycle", "must be >= 2");
  const double dt = 2.0 * pi / omega / samples_per_cycle;
  return {t0, dt, static_cast<std::size_t>(n_cycles) * samples_per_cycle + 1};
}

TimeGrid TimeGrid::for_field(const FieldConfig& config, int samples_per_cycle) {
  return cycles(config.omega, config.n_cycles, samples_per_cycle);
}

bool TimeGrid::spans_integer_cycles(double omega, double rel_tol) const {
  const double cycles = duration() * omega / (2.0 * pi);
  return std::abs(cycles - std::round(cycles)) <= rel_tol * std::max(1.0, cycles) &&
         std::round(cycles) >= 1.0;
}

double envelope_value(const FieldConfig& config, double t) {
  const Envelope& env = config.envelope;
  switch (env.kind) {
    case EnvelopeKind::Flat: return 1.0;
    case EnvelopeKind::SinSquared: {
      const double width = env.cycles * config.period();
      if (t <= 0.0 || t >= width) return 0.0;
      const double s = std::sin(pi * t / width);
      return s * s;
    }
    case EnvelopeKind::Gaussian: {
      const double center = 0.5 * config.duration();
      const double fwhm = env.fwhm_cycles * config.period();
      const double x = (t - center) / fwhm;
      // Field envelope whose intensity has the requested FWHM.
      return std::exp(-2.0 * std::numbers::ln2 * x * x);
    }
  }
  return 0.0;
}

double field_value(const FieldConfig& config, double t) {
  return -config.amplitude() * std::sin(config.omega * t + config.phase) * envelope_value(config, t);
}

RealSeries classical_field(const FieldConfig& config, const TimeGrid& grid) {
  config.validate();
  RealSeries out{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = field_value(config, grid.at(i));
  return out;
}

void validate(const DrivingState& state) {
  if (const auto* c = std::get_if<Coherent>(&state)) {
    if (!std::isfinite(c->alpha.real()) || !std::isfinite(c->alpha.imag())) {
      throw ConfigError("drive.alpha", "must be finite");
    }
  } else if (const auto* p = std::get_if<PhaseAveraged>(&state)) {
    if (!(p->alpha_abs >= 0.0) || !std::isfinite(p->alpha_abs)) {
      throw ConfigError("drive.alpha_abs", "must be finite and >= 0");
    }
    if (p->n_phi < 2) throw ConfigError("drive.n_phi", "must be >= 2");
  } else if (std::get<Fock>(state).n < 0) {
    throw ConfigError("drive.n", "photon number must be >= 0");
  }
}

const char* drive_name(const DrivingState& state) {
  if (std::holds_alternative<Coherent>(state)) return "coherent";
  if (std::holds_alternative<PhaseAveraged>(state)) return "phase_averaged";
  return "fock";
}

double mixture_phase(int k, int n_phi) { return 2.0 * pi * k / n_phi; }

double mean_driving_field(const DrivingState& state, const FieldConfig& config, double t) {
  validate(state);
  if (const auto* c = std::get_if<Coherent>(&state)) {
    return field_value(config.with_alpha(c->alpha), t);
  }
  if (const auto* p = std::get_if<PhaseAveraged>(&state)) {
    FieldConfig component = config;
    component.alpha_abs = p->alpha_abs;
    double sum = 0.0;
    for (int k = 0; k < p->n_phi; ++k) {
      component.phase = mixture_phase(k, p->n_phi);
      sum += field_value(component, t);
    }
    return sum / p->n_phi;
  }
  return 0.0;
}

ModeDensityMatrix driving_mixture_fock_diagonal(double alpha_abs, int n_max, double max_tail) {
  if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) {
    throw ConfigError("alpha_abs", "must be finite and >= 0");
  }
  return poisson_mode_state(alpha_abs * alpha_abs, n_max, max_tail, 1);
}

}  // namespace hhgq
