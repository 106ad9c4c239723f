#include "hhgq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhgq/errors.hpp"
#include "hhgq/io.hpp"

namespace hhgq {

namespace fs = std::filesystem;
using json = nlohmann::json;
using cd = std::complex<double>;

namespace {

// Lines below this fraction of the strongest line are compared absolutely.
constexpr double kSpectrumFloor = 1e-12;
constexpr double kPurityTol = 1e-8;
constexpr double kDiagonalTol = 1e-12;
constexpr double kMeanFieldTol = 1e-13;
constexpr double kStatisticsTol = 1e-10;
constexpr double kClosedFormTol = 1e-6;
constexpr double kSlopeTol = 0.01;
constexpr int kMeanFieldProbes = 100;

EvidenceRecord record(std::string claim, std::string description, json measured, double tolerance,
                      bool pass) {
  return {std::move(claim), std::move(description), std::move(measured), tolerance, pass};
}

EvidenceRecord failure(std::string claim, const std::string& message) {
  return record(std::move(claim), message, json{{"error", message}}, 0.0, false);
}

double max_value(const SpectrumResult& s) {
  double m = 0.0;
  for (const SpectrumLine& line : s.lines) m = std::max(m, line.mean_photon_number);
  return m;
}

json cjson(cd z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// chi_q of the coherent drive for every requested state order.
std::vector<HarmonicAmplitude> state_amplitudes(const ScenarioConfig& cfg, const TimeGrid& grid) {
  const ComplexSeries dipole = cfg.engine.evaluate(cfg.field, grid);
  std::vector<HarmonicAmplitude> out;
  for (int q : cfg.state_orders) out.push_back(harmonic_amplitude(dipole, q, cfg.field.omega));
  return out;
}

int state_n_max(const ScenarioConfig& cfg, double mean) {
  const int n_max = poisson_cutoff(mean);
  if (n_max + 1 > cfg.max_fock_dim) {
    throw TruncationError("mode with mean photon number " + std::to_string(mean) + " needs n_max=" +
                              std::to_string(n_max) + " beyond max_fock_dim=" +
                              std::to_string(cfg.max_fock_dim),
                          n_max);
  }
  return n_max;
}

EvidenceRecord nonvanishing_record(const std::string& claim, const SpectrumResult& s) {
  const double peak = max_value(s);
  int nonzero = 0;
  for (const SpectrumLine& line : s.lines)
    if (line.mean_photon_number > kSpectrumFloor * peak) ++nonzero;
  return record(claim, "harmonic spectrum does not vanish",
                {{"max_mean_photon_number", peak}, {"nonzero_lines", nonzero}}, 0.0, peak > 0.0);
}

void run_coherent(const ScenarioConfig& cfg, const TimeGrid& grid, ScenarioResult& out) {
  out.spectrum = spectrum_coherent(cfg.engine, cfg.field, grid, cfg.q_range);
  out.records.push_back(nonvanishing_record("A.spectrum_nonvanishing", *out.spectrum));

  json per_mode = json::array();
  double worst = 0.0;
  try {
    for (const HarmonicAmplitude& chi : state_amplitudes(cfg, grid)) {
      const int n_max = state_n_max(cfg, std::norm(chi.value));
      ModeDensityMatrix rho = coherent_mode_state(chi.value, n_max, cfg.max_tail, chi.q);
      const double p = purity(rho);
      worst = std::max(worst, std::abs(1.0 - p));
      per_mode.push_back({{"q", chi.q}, {"chi", cjson(chi.value)}, {"n_max", n_max}, {"purity", p}});
      out.states.push_back(std::move(rho));
    }
    out.records.push_back(record("A.pure_coherent_modes", "each harmonic mode is a pure coherent state",
                                 {{"modes", per_mode}, {"max_purity_defect", worst}}, kPurityTol,
                                 worst <= kPurityTol));
  } catch (const Error& e) {
    out.records.push_back(failure("A.pure_coherent_modes", e.what()));
  }
}

void run_phase_averaged(const ScenarioConfig& cfg, const TimeGrid& grid, ScenarioResult& out) {
  const SpectrumResult reference = spectrum_coherent(cfg.engine, cfg.field, grid, cfg.q_range);
  const HusimiSampler sampler(PhaseAveraged{cfg.field.alpha_abs, cfg.n_phi},
                              QuadratureSpec{cfg.quadrature.radial_nodes, cfg.quadrature.angular_nodes,
                                             DriveLimit::Classical});
  const SpectrumResult ensemble = spectrum_ensemble(sampler, cfg.engine, cfg.field, grid, cfg.q_range);

  const double rtol = cfg.spectrum_rtol > 0.0 ? cfg.spectrum_rtol : (cfg.engine.is_toy() ? 1e-9 : 1e-6);
  const double floor = kSpectrumFloor * max_value(reference);
  double worst = 0.0;
  json ratios = json::array();
  for (std::size_t k = 0; k < reference.lines.size(); ++k) {
    const double a = ensemble.lines[k].mean_photon_number, b = reference.lines[k].mean_photon_number;
    worst = std::max(worst, relative_deviation(a, b, floor));
    ratios.push_back({{"q", reference.lines[k].q}, {"ensemble", a}, {"coherent", b}});
  }
  out.records.push_back(record("B.spectrum_invariance",
                               "phase-averaged ensemble spectrum equals the coherent spectrum",
                               {{"lines", ratios}, {"max_relative_deviation", worst}, {"n_phi", cfg.n_phi}},
                               rtol, worst <= rtol));

  const bool ref_nonzero = max_value(reference) > 0.0;
  const bool ens_nonzero = max_value(ensemble) > 0.0;
  out.records.push_back(record("B.spectrum_nonvanishing",
                               "phase averaging never removes a nonvanishing spectrum",
                               {{"coherent_nonvanishing", ref_nonzero}, {"ensemble_nonvanishing", ens_nonzero}},
                               0.0, !ref_nonzero || ens_nonzero));

  // Mean driving field of the mixture against the size of one component.
  const DrivingState drive = PhaseAveraged{cfg.field.alpha_abs, cfg.n_phi};
  double worst_field = 0.0, component = 0.0;
  for (int k = 0; k < kMeanFieldProbes; ++k) {
    const double t = cfg.field.duration() * k / kMeanFieldProbes;
    worst_field = std::max(worst_field, std::abs(mean_driving_field(drive, cfg.field, t)));
    component = std::max(component, std::abs(field_value(cfg.field, t)));
  }
  out.records.push_back(record("B.vanishing_mean_field", "mean electric field of the phase mixture is zero",
                               {{"max_abs_mean_field", worst_field}, {"max_abs_component_field", component},
                                {"probe_times", kMeanFieldProbes}},
                               kMeanFieldTol, worst_field <= kMeanFieldTol));

  json modes = json::array();
  double worst_l1 = 0.0, worst_field_q = 0.0, worst_poisson = 0.0;
  try {
    for (const HarmonicAmplitude& chi : state_amplitudes(cfg, grid)) {
      const double chi_abs = std::abs(chi.value);
      const int n_max = state_n_max(cfg, chi_abs * chi_abs);
      const int n_phi = std::max(cfg.n_phi, chi.q * n_max + 1);
      ModeDensityMatrix rho = phase_averaged_mode_state(chi_abs, chi.q, n_phi, n_max, cfg.max_tail);
      const ModeDensityMatrix poisson = poisson_mode_state(chi_abs * chi_abs, n_max, cfg.max_tail, chi.q);
      double dev = 0.0;
      for (int n = 0; n <= n_max; ++n) dev = std::max(dev, std::abs(rho.population(n) - poisson.population(n)));
      const double l1 = l1_coherence(rho);
      const double field = std::abs(mean_field_amplitude(rho));
      worst_l1 = std::max(worst_l1, l1);
      worst_field_q = std::max(worst_field_q, field);
      worst_poisson = std::max(worst_poisson, dev);
      modes.push_back({{"q", chi.q}, {"chi_abs", chi_abs}, {"n_max", n_max}, {"n_phi", n_phi},
                       {"l1_coherence", l1}, {"abs_mean_a", field}, {"max_poisson_deviation", dev}});
      out.states.push_back(std::move(rho));
    }
    const bool pass = worst_l1 <= kDiagonalTol && worst_field_q <= kMeanFieldTol && worst_poisson <= kDiagonalTol;
    out.records.push_back(record("B.diagonal_modes",
                                 "each harmonic mode is Poisson-diagonal with zero mean field",
                                 {{"modes", modes}, {"max_l1_coherence", worst_l1},
                                  {"max_abs_mean_a", worst_field_q}, {"max_poisson_deviation", worst_poisson},
                                  {"mean_field_tolerance", kMeanFieldTol}},
                                 kDiagonalTol, pass));
  } catch (const Error& e) {
    out.records.push_back(failure("B.diagonal_modes", e.what()));
  }

  out.spectrum = ensemble;
  out.reference_spectrum = reference;
}

void run_fock_limit(const ScenarioConfig& cfg, const TimeGrid& grid, ScenarioResult& out) {
  const ToyDipoleParams* toy = cfg.engine.toy_params();
  if (toy == nullptr) {
    out.records.push_back(failure("C.closed_form", "C_fock_limit needs the toy engine with monomial terms"));
    return;
  }
  const int q_lo = *std::min_element(cfg.fock_q.begin(), cfg.fock_q.end());
  const int q_hi = *std::max_element(cfg.fock_q.begin(), cfg.fock_q.end());
  const QRange range{q_lo, q_hi};
  const double half_span = cfg.field.n_cycles * std::numbers::pi / cfg.field.omega;

  double worst_closed = 0.0, worst_slope = 0.0;
  json slopes = json::array();
  bool monomial = true;
  for (int n : cfg.fock_n) {
    const auto scan = fock_limit_scan(n, cfg.kappas, *toy, cfg.field, grid, range, cfg.quadrature);
    for (int q : cfg.fock_q) {
      const auto term = std::find_if(toy->terms.begin(), toy->terms.end(),
                                     [q](const ToyTerm& t) { return t.q == q; });
      if (term == toy->terms.end() || term->p != q) {
        monomial = false;
        continue;
      }
      // |chi_q|^2 = q c^2 (E / E_ref)^{2q} (n_cycles pi / omega)^2 for a monomial term.
      const double c_eff2 = q * term->c * term->c * half_span * half_span;
      std::vector<double> xs, ys;
      for (const FockScanPoint& point : scan) {
        const double value = point.spectrum.at(q);
        const double closed = c_eff2 * std::pow(2.0 * point.kappa / toy->e_ref, 2 * q) * fock_moment(n, q);
        worst_closed = std::max(worst_closed, relative_deviation(value, closed, 0.0));
        out.fock_scan.push_back({n, q, point.kappa, value, closed});
        xs.push_back(point.kappa);
        ys.push_back(value);
      }
      const double slope = loglog_slope(xs, ys);
      worst_slope = std::max(worst_slope, std::abs(slope - 2.0 * q) / (2.0 * q));
      slopes.push_back({{"n", n}, {"q", q}, {"slope", slope}, {"expected", 2 * q}});
    }
  }
  if (!monomial) {
    out.records.push_back(failure("C.closed_form", "every fock_q order needs a toy term with p == q"));
    return;
  }
  out.records.push_back(record("C.closed_form",
                               "Fock-drive quadrature matches |c|^2 (2 kappa)^{2q} (n+q)!/n!",
                               {{"max_relative_deviation", worst_closed}}, kClosedFormTol,
                               worst_closed <= kClosedFormTol));
  out.records.push_back(record("C.kappa_scaling", "log-log slope of the spectrum against kappa is 2q",
                               {{"fits", slopes}, {"max_relative_slope_error", worst_slope}}, kSlopeTol,
                               worst_slope <= kSlopeTol));

  // In the kappa -> 0 limit the Fock Husimi function collapses onto E = 0.
  double worst_classical = 0.0;
  for (int n : cfg.fock_n) {
    const HusimiSampler sampler(Fock{n}, {cfg.quadrature.radial_nodes, cfg.quadrature.angular_nodes,
                                          DriveLimit::Classical});
    const SpectrumResult s = spectrum_ensemble(sampler, cfg.engine, cfg.field, grid, cfg.q_range);
    worst_classical = std::max(worst_classical, max_value(s));
    if (!out.spectrum) out.spectrum = s;
  }
  out.records.push_back(record("C.classical_limit_vanishes",
                               "Fock drives give no harmonics in the classical limit",
                               {{"max_mean_photon_number", worst_classical}}, 0.0, worst_classical == 0.0));
}

void run_indistinguishability(const ScenarioConfig& cfg, const TimeGrid& grid, ScenarioResult& out) {
  out.spectrum = spectrum_coherent(cfg.engine, cfg.field, grid, cfg.q_range);
  json modes = json::array();
  double worst_dist = 0.0, worst_mean = 0.0, worst_coherent_field = 0.0, worst_mixed_field = 0.0;
  try {
    for (const HarmonicAmplitude& chi : state_amplitudes(cfg, grid)) {
      const double chi_abs = std::abs(chi.value);
      const int n_max = state_n_max(cfg, chi_abs * chi_abs);
      const int n_phi = std::max(cfg.n_phi, chi.q * n_max + 1);
      const ModeDensityMatrix pure = coherent_mode_state(chi.value, n_max, cfg.max_tail, chi.q);
      ModeDensityMatrix mixed = phase_averaged_mode_state(chi_abs, chi.q, n_phi, n_max, cfg.max_tail);

      PhotonComparison cmp{chi.q, chi.value, photon_distribution(pure), photon_distribution(mixed),
                           mean_field_amplitude(pure), mean_field_amplitude(mixed)};
      double dist = 0.0;
      for (std::size_t n = 0; n < cmp.coherent.size(); ++n) {
        dist = std::max(dist, std::abs(cmp.coherent[n] - cmp.phase_averaged[n]));
      }
      const double mean_dev = std::abs(mean_photon(pure) - mean_photon(mixed));
      const double coherent_field_dev = std::abs(std::abs(cmp.mean_a_coherent) - chi_abs);
      const double mixed_field = std::abs(cmp.mean_a_phase_averaged);
      worst_dist = std::max(worst_dist, dist);
      worst_mean = std::max(worst_mean, mean_dev);
      worst_coherent_field = std::max(worst_coherent_field, coherent_field_dev);
      worst_mixed_field = std::max(worst_mixed_field, mixed_field);
      modes.push_back({{"q", chi.q},
                       {"chi", cjson(chi.value)},
                       {"mean_photon_coherent", mean_photon(pure)},
                       {"mean_photon_phase_averaged", mean_photon(mixed)},
                       {"mean_a_coherent", cjson(cmp.mean_a_coherent)},
                       {"mean_a_phase_averaged", cjson(cmp.mean_a_phase_averaged)},
                       {"max_distribution_deviation", dist}});
      out.comparisons.push_back(std::move(cmp));
      out.states.push_back(std::move(mixed));
    }
    out.records.push_back(record("D.same_photon_statistics",
                                 "coherent and phase-averaged modes share mean photon number and distribution",
                                 {{"modes", modes}, {"max_distribution_deviation", worst_dist},
                                  {"max_mean_photon_deviation", worst_mean}},
                                 kStatisticsTol, worst_dist <= kStatisticsTol && worst_mean <= kStatisticsTol));
    out.records.push_back(record("D.distinct_mean_field",
                                 "|<a>| is |chi| for the coherent mode and zero for the phase-averaged mode",
                                 {{"max_coherent_field_deviation", worst_coherent_field},
                                  {"max_phase_averaged_field", worst_mixed_field},
                                  {"coherent_tolerance", kStatisticsTol}},
                                 kMeanFieldTol,
                                 worst_coherent_field <= kStatisticsTol && worst_mixed_field <= kMeanFieldTol));
  } catch (const Error& e) {
    out.records.push_back(failure("D.same_photon_statistics", e.what()));
  }
}

}  // namespace

const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::Coherent: return "A_coherent";
    case ScenarioId::PhaseAveraged: return "B_phase_averaged";
    case ScenarioId::FockLimit: return "C_fock_limit";
    case ScenarioId::Indistinguishability: return "D_indistinguishability";
  }
  return "unknown";
}

ScenarioId scenario_from_string(const std::string& name) {
  for (ScenarioId id : {ScenarioId::Coherent, ScenarioId::PhaseAveraged, ScenarioId::FockLimit,
                        ScenarioId::Indistinguishability}) {
    if (name == to_string(id)) return id;
  }
  throw ConfigError("scenario.id", "unknown scenario '" + name + "'");
}

void ScenarioConfig::validate() const {
  field.validate();
  q_range.validate();
  if (samples_per_cycle < 2) throw ConfigError("grid.samples_per_cycle", "must be >= 2");
  if (n_phi < 2) throw ConfigError("scenario.n_phi", "must be >= 2");
  for (int q : state_orders)
    if (q < 1) throw ConfigError("scenario.state_orders", "harmonic orders must be >= 1");
  if (max_fock_dim < 1) throw ConfigError("scenario.max_fock_dim", "must be >= 1");
  if (id == ScenarioId::FockLimit) {
    if (fock_n.empty() || fock_q.empty()) throw ConfigError("scenario.fock_n", "needs at least one n and q");
    if (kappas.size() < 3) throw ConfigError("scenario.kappas", "needs at least 3 kappa values");
    for (int n : fock_n)
      if (n < 0) throw ConfigError("scenario.fock_n", "photon numbers must be >= 0");
    for (int q : fock_q)
      if (q < 1) throw ConfigError("scenario.fock_q", "harmonic orders must be >= 1");
  }
}

bool ScenarioResult::all_passed() const {
  return std::all_of(records.begin(), records.end(), [](const EvidenceRecord& r) { return r.pass; });
}

double relative_deviation(double a, double b, double floor) {
  const double scale = std::max(std::abs(b), floor);
  if (scale == 0.0) return a == b ? 0.0 : INFINITY;
  return std::abs(a - b) / scale;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const TimeGrid grid = TimeGrid::for_field(config.field, config.samples_per_cycle);
  ScenarioResult out;
  out.id = config.id;
  switch (config.id) {
    case ScenarioId::Coherent: run_coherent(config, grid, out); break;
    case ScenarioId::PhaseAveraged: run_phase_averaged(config, grid, out); break;
    case ScenarioId::FockLimit: run_fock_limit(config, grid, out); break;
    case ScenarioId::Indistinguishability: run_indistinguishability(config, grid, out); break;
  }
  return out;
}

json evidence_json(ScenarioId id, const std::vector<EvidenceRecord>& records) {
  json list = json::array();
  bool all = true;
  for (const EvidenceRecord& r : records) {
    list.push_back({{"claim", r.claim},
                    {"description", r.description},
                    {"measured", r.measured},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
    all = all && r.pass;
  }
  return {{"schema", "hhgq.evidence/1"}, {"scenario", to_string(id)}, {"all_passed", all}, {"records", list}};
}

std::vector<fs::path> emit_report(const ScenarioResult& result, const fs::path& out_root) {
  const fs::path dir = out_root / to_string(result.id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  auto note = [&](const fs::path& p) { written.push_back(p); };

  if (result.spectrum) {
    write_spectrum_csv(dir / "spectrum.csv", *result.spectrum);
    note(dir / "spectrum.csv");
  }
  if (result.reference_spectrum) {
    write_spectrum_csv(dir / "spectrum_coherent.csv", *result.reference_spectrum);
    note(dir / "spectrum_coherent.csv");
  }
  for (const ModeDensityMatrix& rho : result.states) {
    const fs::path p = dir / ("rho_q" + std::to_string(rho.q()) + ".csv");
    write_density_csv(p, rho);
    note(p);
  }
  if (!result.fock_scan.empty()) {
    CsvTable table{{"n", "q", "kappa", "value", "closed_form"}, {}};
    for (const FockScanRow& row : result.fock_scan) {
      table.rows.push_back({std::to_string(row.n), std::to_string(row.q), format_double(row.kappa),
                            format_double(row.value), format_double(row.closed_form)});
    }
    write_csv(dir / "fock_scan.csv", table);
    note(dir / "fock_scan.csv");
  }
  for (const PhotonComparison& cmp : result.comparisons) {
    CsvTable table{{"n", "coherent", "phase_averaged"}, {}};
    for (std::size_t n = 0; n < cmp.coherent.size(); ++n) {
      table.rows.push_back({std::to_string(n), format_double(cmp.coherent[n]), format_double(cmp.phase_averaged[n])});
    }
    const fs::path p = dir / ("photon_dist_q" + std::to_string(cmp.q) + ".csv");
    write_csv(p, table);
    note(p);
  }
  write_json(dir / "evidence.json", evidence_json(result.id, result.records));
  note(dir / "evidence.json");
  return written;
}

}  // namespace hhgq
