#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hhgq/errors.hpp"
#include "hhgq/field.hpp"
#include "oracles.hpp"

using namespace hhgq;
using std::numbers::pi;

namespace {

FieldConfig drive(double alpha_abs = 265.0, double phase = 0.0) {
  FieldConfig f;
  f.kappa = 1e-4;
  f.omega = 0.057;
  f.alpha_abs = alpha_abs;
  f.phase = phase;
  return f;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("field follows -2 kappa |alpha| sin(omega t + phi)") {
    const FieldConfig f = drive();
    CHECK(field_value(f, 0.0) == doctest::Approx(0.0));
    CHECK(field_value(f, 0.5 * pi / f.omega) == doctest::Approx(-2e-4 * 265.0).epsilon(1e-14));
    CHECK(f.amplitude() == doctest::Approx(0.053).epsilon(1e-14));
  }

  TEST_CASE("a phase is a time advance") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-4.0, 4.0), time(0.0, 800.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double phi = phase(rng), t = time(rng);
      const FieldConfig f = drive(265.0, phi);
      CHECK(std::abs(field_value(f, t) - field_value(drive(), t + phi / f.omega)) <= 1e-12 * f.amplitude());
    }
  }

  TEST_CASE("invalid parameters name the field") {
    FieldConfig f = drive();
    f.kappa = 0.0;
    try {
      f.validate();
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "kappa");
    }
    f = drive();
    f.omega = -1.0;
    CHECK_THROWS_AS(f.validate(), ConfigError);
    f = drive();
    f.n_cycles = 0;
    CHECK_THROWS_AS(f.validate(), ConfigError);
    f = drive();
    f.envelope = Envelope::sin_squared(0);
    CHECK_THROWS_AS(f.validate(), ConfigError);
    CHECK_THROWS_AS(classical_field(f, TimeGrid(0.0, 1.0, 4)), ConfigError);
  }

  TEST_CASE("time grids") {
    const TimeGrid g = TimeGrid::cycles(0.057, 8, 64);
    CHECK(g.size() == 8 * 64 + 1);
    CHECK(g.duration() == doctest::Approx(8 * 2 * pi / 0.057).epsilon(1e-14));
    CHECK(g.spans_integer_cycles(0.057));
    CHECK_FALSE(TimeGrid(0.0, 1.0, 10).spans_integer_cycles(0.057));
    CHECK(g.shifted(3.0).t0() == 3.0);
    CHECK_THROWS_AS(TimeGrid(0.0, 0.0, 10), ConfigError);
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(TimeGrid::cycles(0.057, 8, 1), ConfigError);
  }

  TEST_CASE("envelopes") {
    FieldConfig f = drive();
    f.n_cycles = 10;
    f.envelope = Envelope::sin_squared(10);
    const double width = 10 * f.period();
    CHECK(envelope_value(f, -1.0) == 0.0);
    CHECK(envelope_value(f, width + 1.0) == 0.0);
    CHECK(envelope_value(f, 0.5 * width) == doctest::Approx(1.0));
    CHECK(envelope_value(f, 0.25 * width) == doctest::Approx(0.5));

    f.envelope = Envelope::gaussian(3.0);
    const double center = 0.5 * f.duration(), fwhm = 3.0 * f.period();
    CHECK(envelope_value(f, center) == doctest::Approx(1.0));
    // Intensity (envelope squared) is halved at +- FWHM / 2.
    CHECK(std::pow(envelope_value(f, center + 0.5 * fwhm), 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::pow(envelope_value(f, center - 0.5 * fwhm), 2) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("classical_field samples field_value") {
    const FieldConfig f = drive(100.0, 0.3);
    const TimeGrid g = TimeGrid::for_field(f, 32);
    const RealSeries e = classical_field(f, g);
    REQUIRE(e.values.size() == g.size());
    for (std::size_t i = 0; i < g.size(); i += 17) CHECK(e.values[i] == field_value(f, g.at(i)));
  }

  TEST_CASE("mean driving field of each drive type") {
    const FieldConfig f = drive(5.0);
    for (double t : {0.0, 1.0, 17.3, 101.0}) {
      CHECK(std::abs(mean_driving_field(PhaseAveraged{5.0, 16}, f, t)) <= 1e-15);
      CHECK(mean_driving_field(Fock{4}, f, t) == 0.0);
      const std::complex<double> alpha = std::polar(5.0, 0.4);
      CHECK(mean_driving_field(Coherent{alpha}, f, t) == doctest::Approx(field_value(drive(5.0, 0.4), t)));
    }
    // Two-point mixture: sin(x) + sin(x + pi) = 0 as well.
    CHECK(std::abs(mean_driving_field(PhaseAveraged{5.0, 2}, f, 3.0)) <= 1e-15);
  }

  TEST_CASE("phase mixture mean field vanishes for random amplitudes and sizes") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> amp(0.0, 1e4), time(0.0, 1e3);
    std::uniform_int_distribution<int> size(2, 512);
    for (int trial = 0; trial < 100; ++trial) {
      const double a = amp(rng);
      const FieldConfig f = drive(a);
      CHECK(std::abs(mean_driving_field(PhaseAveraged{a, size(rng)}, f, time(rng))) <= 1e-13 * std::max(1.0, f.amplitude()));
    }
  }

  TEST_CASE("drive validation") {
    CHECK_THROWS_AS(validate(PhaseAveraged{-1.0, 16}), ConfigError);
    CHECK_THROWS_AS(validate(PhaseAveraged{1.0, 1}), ConfigError);
    CHECK_THROWS_AS(validate(Fock{-1}), ConfigError);
    CHECK_THROWS_AS(validate(Coherent{{NAN, 0.0}}), ConfigError);
    CHECK(std::string(drive_name(Fock{2})) == "fock");
    CHECK(mixture_phase(4, 16) == doctest::Approx(pi / 2));
  }

  TEST_CASE("phase mixture in the Fock basis is Poisson") {
    const ModeDensityMatrix rho = driving_mixture_fock_diagonal(3.0, 60);
    const std::vector<double> p = oracle::poisson_pmf(9.0, 60);
    CHECK(rho.is_diagonal_storage());
    for (int n = 0; n <= 60; ++n) CHECK(rho.population(n) == doctest::Approx(p[n]).epsilon(1e-12));
    // Large drives stay representable.
    const ModeDensityMatrix big = driving_mixture_fock_diagonal(265.0, poisson_cutoff(265.0 * 265.0));
    CHECK(big.trace() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mean_photon(big) == doctest::Approx(265.0 * 265.0).epsilon(1e-10));
  }
}
