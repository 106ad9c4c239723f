#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hhgq/dipole.hpp"
#include "hhgq/errors.hpp"
#include "hhgq/harmonics.hpp"

using namespace hhgq;
using std::numbers::pi;

namespace {

FieldConfig sfa_field(double phase = 0.0) {
  FieldConfig f;
  f.kappa = 1e-4;
  f.omega = 0.057;
  f.alpha_abs = 0.053 / 2e-4;
  f.phase = phase;
  return f;
}

double max_abs(const ComplexSeries& s) {
  double m = 0.0;
  for (auto v : s.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_SUITE("dipole") {
  TEST_CASE("toy single term reproduces cos(omega t)") {
    FieldConfig f;
    f.kappa = 0.5;
    f.alpha_abs = 1.0;  // E = 1 = E_ref
    const TimeGrid g = TimeGrid::for_field(f, 64);
    const ComplexSeries d = toy_dipole(f, g, ToyDipoleParams{{{1, 1.0, 1}}, 1.0});
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(d.values[i] - std::cos(f.omega * g.at(i))) <= 1e-14);
    }
  }

  TEST_CASE("toy amplitude scales as (E / E_ref)^p") {
    FieldConfig f;
    f.kappa = 0.5;
    f.alpha_abs = 2.0;  // E = 2 E_ref
    const TimeGrid g = TimeGrid::for_field(f, 96);
    const ComplexSeries d = toy_dipole(f, g, ToyDipoleParams{{{3, 0.2, 3}}, 1.0});
    CHECK(max_abs(d) == doctest::Approx(1.6).epsilon(1e-12));
  }

  TEST_CASE("toy parameter validation") {
    CHECK_THROWS_AS((ToyDipoleParams{{{2, 1.0, 1}}, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ToyDipoleParams{{{1, 1.0, 0}}, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ToyDipoleParams{{{1, 1.0, 1}}, 0.0}.validate()), ConfigError);
    const ToyDipoleParams m = ToyDipoleParams::monomial({1, 3, 5}, 0.5, 2.0);
    REQUIRE(m.terms.size() == 3);
    CHECK(m.terms[2].p == 5);
    CHECK(m.e_ref == 2.0);
  }

  TEST_CASE("zero field gives zero dipole for both engines") {
    FieldConfig f = sfa_field();
    f.alpha_abs = 0.0;
    const TimeGrid g = TimeGrid::for_field(f, 64);
    CHECK(max_abs(DipoleEngine::sfa({}).evaluate(f, g)) == 0.0);
    CHECK(max_abs(DipoleEngine::toy(ToyDipoleParams::monomial({1, 3}, 1.0)).evaluate(f, g)) == 0.0);
    CHECK(max_abs(DipoleEngine{}.evaluate(sfa_field(), g)) == 0.0);
  }

  TEST_CASE("toy engine is exactly phase covariant") {
    const DipoleEngine toy = DipoleEngine::toy(ToyDipoleParams{{{1, 1.0, 1}, {3, 0.5, 3}, {7, 0.1, 2}}, 0.053});
    const FieldConfig f = sfa_field();
    const TimeGrid g = TimeGrid::for_field(f, 64);
    CHECK(covariance_check(toy, f, g, 0.0) == 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> phase(-2 * pi, 2 * pi);
    for (int trial = 0; trial < 20; ++trial) CHECK(covariance_check(toy, f, g, phase(rng)) <= 1e-12);
  }

  TEST_CASE("covariance check needs a flat envelope") {
    FieldConfig f = sfa_field();
    f.envelope = Envelope::sin_squared(8);
    CHECK_THROWS_AS(covariance_check(DipoleEngine{}, f, TimeGrid::for_field(f, 64), 0.1), UnsupportedEnvelope);
  }

  TEST_CASE("linearity in c_q") {
    const FieldConfig f = sfa_field(0.3);
    const TimeGrid g = TimeGrid::for_field(f, 64);
    const ToyDipoleParams base{{{1, 0.4, 1}, {3, 0.2, 3}, {5, 0.1, 5}}, 0.053};
    ToyDipoleParams doubled = base;
    doubled.terms[1].c *= 2.0;
    const ComplexSeries d0 = toy_dipole(f, g, base), d1 = toy_dipole(f, g, doubled);
    for (int q : {1, 3, 5}) {
      const auto c0 = harmonic_amplitude(d0, q, f.omega).value, c1 = harmonic_amplitude(d1, q, f.omega).value;
      const auto expected = q == 3 ? 2.0 * c0 : c0;
      CHECK(std::abs(c1 - expected) <= 1e-12 * std::abs(expected));
    }
  }

  TEST_CASE("SFA rejects under-resolved grids") {
    const FieldConfig f = sfa_field();
    CHECK(sfa_min_samples_per_cycle(f, {}) == static_cast<int>(std::ceil(40 * cutoff_order(0.5, 0.053, 0.057))));
    CHECK_THROWS_AS(sfa_dipole(f, TimeGrid::for_field(f, 256), {}), ResolutionError);
  }

  TEST_CASE("cutoff law") {
    const double up = 0.053 * 0.053 / (4 * 0.057 * 0.057);
    CHECK(ponderomotive_energy(0.053, 0.057) == doctest::Approx(up));
    CHECK(cutoff_order(0.5, 0.053, 0.057) == doctest::Approx((0.5 + 3.17 * up) / 0.057));
    CHECK(cutoff_order(0.5, 0.053, 0.057) == doctest::Approx(20.79).epsilon(1e-3));
  }

  TEST_CASE("SFA dipole: real, half-period antisymmetric, phase covariant") {
    const FieldConfig f = sfa_field();
    const int spc = 1024;
    const TimeGrid g = TimeGrid::for_field(f, spc);
    const DipoleEngine sfa = DipoleEngine::sfa({});
    const ComplexSeries d = sfa.evaluate(f, g);
    const double scale = max_abs(d);
    REQUIRE(scale > 0.0);
    double worst = 0.0, imag = 0.0;
    for (std::size_t i = 0; i + spc / 2 < g.size(); ++i) {
      imag = std::max(imag, std::abs(d.values[i].imag()));
      worst = std::max(worst, std::abs(d.values[i + spc / 2] + d.values[i]));
    }
    CHECK(imag == 0.0);
    CHECK(worst <= 1e-12 * scale);
    CHECK(covariance_check(sfa, f, g, pi / 2) <= 1e-6);
  }

  TEST_CASE("SFA handles pulsed envelopes") {
    FieldConfig f = sfa_field();
    f.envelope = Envelope::sin_squared(8);
    const ComplexSeries d = sfa_dipole(f, TimeGrid::for_field(f, 1024), {});
    CHECK(max_abs(d) > 0.0);
    CHECK(std::all_of(d.values.begin(), d.values.end(), [](auto v) { return std::isfinite(v.real()); }));
  }

  TEST_CASE("atom parameter validation") {
    CHECK_THROWS_AS((AtomParams{0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((AtomParams{0.5, 0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((AtomParams{0.5, 1e-6, 1.0, 1.5}.validate()), ConfigError);
    CHECK(DipoleEngine::sfa({}).name() == "sfa");
    CHECK(DipoleEngine{}.name() == "toy");
  }
}
