#pragma once

// TOML run configuration shared by the CLI and the Python bindings.
//
// Sections (all optional at parse time; each subcommand checks for the ones it
// needs):
//
//   [field]      kappa, omega, alpha_abs | peak_field, phase, n_cycles,
//                envelope = "flat" | "sin2" | "gaussian",
//                envelope_cycles (sin2), fwhm_cycles (gaussian)
//   [grid]       samples_per_cycle
//   [engine]     kind = "sfa" | "toy"
//                sfa: ip, epsilon?, history_cycles?, taper_fraction?
//                toy: e_ref, [[engine.terms]] q, c, p
//   [harmonics]  q_min, q_max, window? = "none" | "hann"
//   [drive]      kind = "coherent" | "phase_averaged" | "fock",
//                n_phi?, n (fock), limit? = "quantum" | "classical",
//                radial_nodes?, angular_nodes?
//   [state]      kind = "coherent" | "phase_averaged" | "poisson" | "driving_mixture",
//                q?, chi_re/chi_im (coherent), chi_abs (phase_averaged),
//                mean (poisson), n_phi?, n_max?, max_tail?
//   [husimi]     center_re?, center_im?, half_width, points
//   [scenario]   id, state_orders?, n_phi?, max_fock_dim?, spectrum_rtol?,
//                max_tail?, fock_n?, fock_q?, kappas?
//
// Keys marked '?' are numerical controls with documented defaults; every
// physical parameter must be given explicitly. Unknown sections and keys are
// rejected with their source line.

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hhgq/scenarios.hpp"

namespace hhgq {

struct StateSpec {
  enum class Kind { Coherent, PhaseAveraged, Poisson, DrivingMixture };
  Kind kind = Kind::Coherent;
  int q = 1;
  /// Coherent: explicit chi. Unset means chi_q is computed from [field]/[engine].
  std::optional<std::complex<double>> chi;
  /// PhaseAveraged: explicit |chi|; Poisson: mean photon number. Unset for
  /// PhaseAveraged means |chi_q| is computed from [field]/[engine].
  std::optional<double> magnitude;
  int n_phi = 0;  // 0 selects q * n_max + 1
  std::optional<int> n_max;
  double max_tail = kPoissonTailTolerance;
};

struct HusimiGrid {
  std::complex<double> center;
  double half_width = 0.0;
  int points = 0;
};

struct ProjectConfig {
  std::string source;
  std::optional<FieldConfig> field;
  std::optional<int> samples_per_cycle;
  std::optional<DipoleEngine> engine;
  std::optional<QRange> q_range;
  Window window = Window::None;
  std::optional<DrivingState> drive;
  QuadratureSpec quadrature;
  std::optional<StateSpec> state;
  std::optional<HusimiGrid> husimi;
  std::optional<ScenarioConfig> scenario;

  // Accessors that throw ConfigError naming the missing section.
  const FieldConfig& require_field() const;
  TimeGrid require_grid() const;
  const DipoleEngine& require_engine() const;
  QRange require_q_range() const;
  const StateSpec& require_state() const;
  const ScenarioConfig& require_scenario() const;
  /// [drive] if present, otherwise a coherent drive built from [field].
  DrivingState drive_or_field() const;
};

/// Parses TOML text; `source` names the input in error messages.
ProjectConfig parse_config(std::string_view text, const std::string& source = "<string>");
ProjectConfig load_config(const std::filesystem::path& path);

}  // namespace hhgq
