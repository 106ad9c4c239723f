#include "hhgq/run.hpp"

#include <algorithm>

#include "hhgq/errors.hpp"

namespace hhgq {

namespace {

std::complex<double> chi_from_field(const ProjectConfig& config, int q) {
  const ComplexSeries dipole = compute_dipole(config);
  return harmonic_amplitude(dipole, q, config.require_field().omega, config.window).value;
}

int n_max_for(const StateSpec& spec, double mean) { return spec.n_max.value_or(poisson_cutoff(mean)); }

}  // namespace

ComplexSeries compute_dipole(const ProjectConfig& config) {
  return config.require_engine().evaluate(config.require_field(), config.require_grid());
}

SpectrumResult compute_spectrum(const ProjectConfig& config) {
  const FieldConfig& field = config.require_field();
  const TimeGrid grid = config.require_grid();
  const DipoleEngine& engine = config.require_engine();
  const QRange range = config.require_q_range();
  if (!config.drive || std::holds_alternative<Coherent>(*config.drive)) {
    return spectrum_coherent(engine, field, grid, range, config.window);
  }
  const HusimiSampler sampler(*config.drive, config.quadrature);
  return spectrum_ensemble(sampler, engine, field, grid, range, config.window);
}

ModeDensityMatrix compute_state(const ProjectConfig& config) {
  const StateSpec& spec = config.require_state();
  switch (spec.kind) {
    case StateSpec::Kind::Coherent: {
      const std::complex<double> chi = spec.chi ? *spec.chi : chi_from_field(config, spec.q);
      return coherent_mode_state(chi, n_max_for(spec, std::norm(chi)), spec.max_tail, spec.q);
    }
    case StateSpec::Kind::PhaseAveraged: {
      const double chi_abs = spec.magnitude ? *spec.magnitude : std::abs(chi_from_field(config, spec.q));
      const int n_max = n_max_for(spec, chi_abs * chi_abs);
      const int n_phi = spec.n_phi > 0 ? spec.n_phi : spec.q * n_max + 1;
      return phase_averaged_mode_state(chi_abs, spec.q, n_phi, n_max, spec.max_tail);
    }
    case StateSpec::Kind::Poisson:
      return poisson_mode_state(*spec.magnitude, n_max_for(spec, *spec.magnitude), spec.max_tail, spec.q);
    case StateSpec::Kind::DrivingMixture: {
      const double mean = *spec.magnitude * *spec.magnitude;
      return driving_mixture_fock_diagonal(*spec.magnitude, n_max_for(spec, mean), spec.max_tail);
    }
  }
  throw ConfigError("state.kind", "unsupported state kind");
}

}  // namespace hhgq
