#pragma once

// End-to-end demonstrations. Each scenario produces named evidence records
// that carry the measured quantities and the tolerance they were judged by.
//
//   A_coherent              coherent drive: spectrum and pure coherent modes
//   B_phase_averaged        uniform phase mixture: same spectrum, diagonal modes,
//                           vanishing mean driving field
//   C_fock_limit            Fock drives: closed-form moments, kappa^{2q} scaling,
//                           vanishing spectrum in the classical limit
//   D_indistinguishability  coherent vs phase-averaged modes: same photon
//                           statistics, different mean field

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hhgq/harmonics.hpp"
#include "hhgq/quantum_state.hpp"

namespace hhgq {

enum class ScenarioId { Coherent, PhaseAveraged, FockLimit, Indistinguishability };

const char* to_string(ScenarioId id);
/// Accepts "A_coherent", "B_phase_averaged", "C_fock_limit", "D_indistinguishability".
ScenarioId scenario_from_string(const std::string& name);

struct ScenarioConfig {
  ScenarioId id = ScenarioId::Coherent;
  FieldConfig field;
  DipoleEngine engine;
  int samples_per_cycle = 64;
  QRange q_range{1, 15};
  int n_phi = 256;                       // drive phase-mixture size (B)
  std::vector<int> state_orders{1, 3, 5};  // harmonic modes whose states are built
  double max_tail = kPoissonTailTolerance;
  int max_fock_dim = 2048;
  /// Relative tolerance of the B spectrum comparison; <= 0 selects 1e-9 for the
  /// toy engine and 1e-6 for the SFA engine.
  double spectrum_rtol = 0.0;
  // C_fock_limit
  std::vector<int> fock_n{0, 2, 5};
  std::vector<int> fock_q{1, 3};
  std::vector<double> kappas{1e-3, 5e-4, 2.5e-4, 1.25e-4};
  QuadratureSpec quadrature;

  void validate() const;
};

struct EvidenceRecord {
  std::string claim;
  std::string description;
  nlohmann::json measured;
  double tolerance = 0.0;
  bool pass = false;
};

struct FockScanRow {
  int n = 0;
  int q = 1;
  double kappa = 0.0;
  double value = 0.0;
  double closed_form = 0.0;
};

struct PhotonComparison {
  int q = 1;
  std::complex<double> chi;
  std::vector<double> coherent;
  std::vector<double> phase_averaged;
  std::complex<double> mean_a_coherent;
  std::complex<double> mean_a_phase_averaged;
};

struct ScenarioResult {
  ScenarioId id = ScenarioId::Coherent;
  std::vector<EvidenceRecord> records;
  std::optional<SpectrumResult> spectrum;
  std::optional<SpectrumResult> reference_spectrum;
  std::vector<ModeDensityMatrix> states;
  std::vector<FockScanRow> fock_scan;
  std::vector<PhotonComparison> comparisons;

  bool all_passed() const;
};

/// Runs one scenario. Sub-check failures become failing records; the run
/// itself only throws for invalid configurations.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// |a - b| / max(|b|, floor).
double relative_deviation(double a, double b, double floor);

nlohmann::json evidence_json(ScenarioId id, const std::vector<EvidenceRecord>& records);

/// Writes <out_root>/<scenario>/{evidence.json, spectrum.csv, rho_q<q>.csv, ...}
/// and returns the written paths in creation order.
std::vector<std::filesystem::path> emit_report(const ScenarioResult& result,
                                               const std::filesystem::path& out_root);

}  // namespace hhgq
