#pragma once

// Harmonic coherent-state amplitudes chi_q and spectra <a_q^dagger a_q> for
// coherent and ensemble (Husimi-weighted) drives.

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hhgq/dipole.hpp"
#include "hhgq/phasespace.hpp"

namespace hhgq {

struct HarmonicAmplitude {
  int q = 1;
  std::complex<double> value;
};

/// Inclusive range of integer harmonic orders.
struct QRange {
  int first = 1;
  int last = 1;

  void validate() const;
  std::vector<int> orders() const;
};

enum class Window { None, Hann };

/// chi_q = -i sqrt(q) int dt <d(t)> e^{i q omega t}, trapezoidal rule on the
/// dipole grid. Throws ResolutionError above the grid Nyquist frequency.
HarmonicAmplitude harmonic_amplitude(const ComplexSeries& dipole, int q, double omega,
                                     Window window = Window::None);
std::vector<HarmonicAmplitude> harmonic_amplitudes(const ComplexSeries& dipole, QRange range,
                                                   double omega, Window window = Window::None);

struct SpectrumLine {
  int q = 1;
  double mean_photon_number = 0.0;
};

struct SpectrumResult {
  std::vector<SpectrumLine> lines;  // ascending q
  std::string drive;
  std::string engine;
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t n = 0;

  std::vector<double> values() const;
  double at(int q) const;
};

/// |chi_q|^2 for the single classical field described by `config`.
SpectrumResult spectrum_coherent(const DipoleEngine& engine, const FieldConfig& config,
                                 const TimeGrid& grid, QRange range, Window window = Window::None);

/// int d^2 alpha Q(alpha) |chi_q(alpha)|^2 with the sampler's quadrature. Each
/// node alpha drives the engine with E = 2 kappa alpha (kappa, omega and the
/// envelope are taken from `base`).
SpectrumResult spectrum_ensemble(const HusimiSampler& sampler, const DipoleEngine& engine,
                                 const FieldConfig& base, const TimeGrid& grid, QRange range,
                                 Window window = Window::None);

struct FockScanPoint {
  double kappa = 0.0;
  SpectrumResult spectrum;
};

/// Fock(n) ensemble spectra for a sequence of kappa values with a monomial toy
/// response. Throws ScanError for fewer than three kappa values.
std::vector<FockScanPoint> fock_limit_scan(int n, std::span<const double> kappa_values,
                                           const ToyDipoleParams& params, const FieldConfig& base,
                                           const TimeGrid& grid, QRange range,
                                           QuadratureSpec spec = {});

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Plateau/cutoff summary of a spectrum over odd orders.
struct PlateauAnalysis {
  int cutoff_order = 0;            // last odd order of the plateau
  double plateau_level = 0.0;      // median log10 yield of odd orders in the plateau
  double drop_decades = 0.0;       // fall-off from plateau_level to the last odd order
  double odd_even_contrast = 0.0;  // min over even q of (neighbouring odd yield / even yield)
};

/// The cutoff is the last odd order from `plateau_start` on whose yield is a
/// local maximum among odd orders and lies within `plateau_decades` of the
/// strongest of them. The plateau level is the median log10 yield of odd
/// orders from `plateau_start` to the cutoff; the odd/even contrast is taken
/// over even orders up to the cutoff.
PlateauAnalysis analyze_plateau(const SpectrumResult& spectrum, int plateau_start = 5,
                                double plateau_decades = 1.5);

nlohmann::json to_json(const SpectrumResult& spectrum);
SpectrumResult spectrum_from_json(const nlohmann::json& j);
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumResult& spectrum);
SpectrumResult read_spectrum_csv(const std::filesystem::path& path);

}  // namespace hhgq
