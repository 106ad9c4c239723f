#pragma once

// Dipole expectation value <d(t)> of the electron driven by the classical
// field of one coherent-state component. Two engines:
//   * a strong-field-approximation (Lewenstein-type) double time integral, and
//   * an analytic toy response used as a closed-form oracle.

#include <complex>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "hhgq/field.hpp"

namespace hhgq {

struct ComplexSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> values;
};

struct AtomParams {
  double ip = 0.5;        // ionization potential (a.u.)
  double epsilon = 1e-6;  // regularization of the (t - t')^{3/2} spreading factor
  double history_cycles = 1.0;  // excursion window of the inner integral
  double taper_fraction = 0.2;  // cos^2 roll-off over the end of that window

  void validate() const;
};

struct ToyTerm {
  int q = 1;      // odd harmonic order
  double c = 0.0;
  int p = 1;      // power of E_alpha / E_ref
};

/// d(t) = sum_q c_q (E_alpha/E_ref)^{p_q} cos(q (omega t + phi)).
struct ToyDipoleParams {
  std::vector<ToyTerm> terms;
  double e_ref = 1.0;

  void validate() const;

  /// Terms c * E^q at the given odd orders: |chi_q|^2 scales as E^{2q}.
  static ToyDipoleParams monomial(const std::vector<int>& orders, double c, double e_ref = 1.0);
};

ComplexSeries sfa_dipole(const FieldConfig& config, const TimeGrid& grid, const AtomParams& atom);
ComplexSeries toy_dipole(const FieldConfig& config, const TimeGrid& grid,
                         const ToyDipoleParams& params);

/// Closed value type selecting one of the dipole engines.
class DipoleEngine {
 public:
  /// Toy engine without terms (identically zero response).
  DipoleEngine() : params_(ToyDipoleParams{}) {}
  static DipoleEngine sfa(AtomParams atom) { return DipoleEngine(atom); }
  static DipoleEngine toy(ToyDipoleParams params) { return DipoleEngine(std::move(params)); }

  ComplexSeries evaluate(const FieldConfig& config, const TimeGrid& grid) const;
  std::string name() const;
  bool is_toy() const { return std::holds_alternative<ToyDipoleParams>(params_); }
  const AtomParams* atom() const { return std::get_if<AtomParams>(&params_); }
  const ToyDipoleParams* toy_params() const { return std::get_if<ToyDipoleParams>(&params_); }

 private:
  explicit DipoleEngine(AtomParams atom) : params_(atom) {}
  explicit DipoleEngine(ToyDipoleParams params) : params_(std::move(params)) {}

  std::variant<ToyDipoleParams, AtomParams> params_;
};

/// Max |d_phi(t_i) - d_0(t_i + delta_phi/omega)| over the grid, divided by
/// max |d_0|. Flat envelopes only.
double covariance_check(const DipoleEngine& engine, const FieldConfig& config,
                        const TimeGrid& grid, double delta_phi);

/// U_p = E^2 / (4 omega^2).
double ponderomotive_energy(double amplitude, double omega);
/// Semiclassical cutoff order (Ip + 3.17 U_p) / omega.
double cutoff_order(double ip, double amplitude, double omega);

/// Smallest samples-per-cycle accepted by sfa_dipole for this drive.
int sfa_min_samples_per_cycle(const FieldConfig& config, const AtomParams& atom);

void write_dipole_csv(const std::filesystem::path& path, const ComplexSeries& dipole);
ComplexSeries read_dipole_csv(const std::filesystem::path& path);

}  // namespace hhgq
