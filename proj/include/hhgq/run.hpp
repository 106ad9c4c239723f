#pragma once

// Computations behind the CLI subcommands, driven by a parsed ProjectConfig.

#include "hhgq/config.hpp"

namespace hhgq {

/// Dipole series from [field], [grid] and [engine].
ComplexSeries compute_dipole(const ProjectConfig& config);

/// Spectrum over [harmonics]. A coherent (or absent) [drive] uses the single
/// classical field; other drives integrate over their Husimi function.
SpectrumResult compute_spectrum(const ProjectConfig& config);

/// Harmonic-mode state described by [state]. Missing chi values are taken
/// from the dipole of [field]/[grid]/[engine].
ModeDensityMatrix compute_state(const ProjectConfig& config);

}  // namespace hhgq
