#pragma once

// Classical driving field attached to one coherent-state component, and the
// driving-state boundary conditions (coherent, phase-averaged, Fock).
//
// Convention used throughout the project: a component with amplitude |alpha|
// and phase phi drives the electron with
//
//   E(t) = -2 kappa |alpha| sin(omega t + phi) * envelope(t),
//
// so that a phase phi is equivalent to the time advance t -> t + phi/omega.

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "hhgq/quantum_state.hpp"

namespace hhgq {

enum class EnvelopeKind { Flat, SinSquared, Gaussian };

struct Envelope {
  EnvelopeKind kind = EnvelopeKind::Flat;
  int cycles = 0;            // SinSquared: full width in optical cycles
  double fwhm_cycles = 0.0;  // Gaussian: intensity FWHM in optical cycles

  static Envelope flat() { return {}; }
  static Envelope sin_squared(int cycles) { return {EnvelopeKind::SinSquared, cycles, 0.0}; }
  static Envelope gaussian(double fwhm_cycles) { return {EnvelopeKind::Gaussian, 0, fwhm_cycles}; }
};

const char* to_string(EnvelopeKind kind);

/// Classical field parameters in atomic units.
struct FieldConfig {
  double kappa = 1e-4;
  double omega = 0.057;
  double alpha_abs = 0.0;
  double phase = 0.0;
  Envelope envelope;
  int n_cycles = 8;

  double period() const;
  double duration() const { return n_cycles * period(); }
  /// Physical peak amplitude E_alpha = 2 kappa |alpha|.
  double amplitude() const { return 2.0 * kappa * alpha_abs; }

  /// Same field with amplitude and phase taken from a complex alpha.
  FieldConfig with_alpha(std::complex<double> alpha) const;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Uniform sampling t_i = t0 + i dt, i = 0 .. n-1.
class TimeGrid {
 public:
  TimeGrid(double t0, double dt, std::size_t n);

  /// Grid spanning exactly n_cycles optical cycles with samples_per_cycle
  /// steps per cycle; both endpoints are included.
  static TimeGrid cycles(double omega, int n_cycles, int samples_per_cycle, double t0 = 0.0);
  static TimeGrid for_field(const FieldConfig& config, int samples_per_cycle);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) * dt_; }
  double duration() const noexcept { return static_cast<double>(n_ - 1) * dt_; }

  /// True when the duration is an integer number of periods 2 pi / omega.
  bool spans_integer_cycles(double omega, double rel_tol = 1e-9) const;
  TimeGrid shifted(double offset) const { return {t0_ + offset, dt_, n_}; }

 private:
  double t0_;
  double dt_;
  std::size_t n_;
};

struct RealSeries {
  TimeGrid grid;
  std::vector<double> values;
};

double envelope_value(const FieldConfig& config, double t);
double field_value(const FieldConfig& config, double t);

/// Samples of E(t) on the grid.
RealSeries classical_field(const FieldConfig& config, const TimeGrid& grid);

struct Coherent {
  std::complex<double> alpha;
};
struct PhaseAveraged {
  double alpha_abs = 0.0;
  int n_phi = 256;
};
struct Fock {
  int n = 0;
};

using DrivingState = std::variant<Coherent, PhaseAveraged, Fock>;

void validate(const DrivingState& state);
const char* drive_name(const DrivingState& state);

/// Phase of the k-th component of a uniform n_phi-point phase mixture.
double mixture_phase(int k, int n_phi);

/// Tr[E_Q(t) rho] for the driving state: the coherent field for Coherent, the
/// uniform phase sum for PhaseAveraged and 0 for Fock.
double mean_driving_field(const DrivingState& state, const FieldConfig& config, double t);

/// Phase-averaged driving state written in the Fock basis (Poisson diagonal).
ModeDensityMatrix driving_mixture_fock_diagonal(double alpha_abs, int n_max,
                                                double max_tail = kPoissonTailTolerance);

}  // namespace hhgq
