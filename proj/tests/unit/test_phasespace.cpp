#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hhgq/errors.hpp"
#include "hhgq/phasespace.hpp"
#include "oracles.hpp"

using namespace hhgq;
using std::numbers::pi;
using cd = std::complex<double>;

TEST_SUITE("phasespace") {
  TEST_CASE("Husimi values") {
    const cd a0(1.5, -0.5);
    const HusimiSampler coherent(Coherent{a0});
    CHECK(coherent(a0) == doctest::Approx(1.0 / pi));
    CHECK(coherent(a0 + 1.0) == doctest::Approx(std::exp(-1.0) / pi));

    // Q_n(alpha) = |alpha|^{2n} e^{-|alpha|^2} / (pi n!), largest on |alpha|^2 = n.
    const HusimiSampler fock(Fock{3});
    CHECK(fock(std::sqrt(3.0)) == doctest::Approx(27.0 * std::exp(-3.0) / (6.0 * pi)));
    CHECK(fock(0.0) == 0.0);
    CHECK(fock(std::sqrt(3.0)) > fock(std::sqrt(2.5)));
    CHECK(fock(std::sqrt(3.0)) > fock(std::sqrt(3.5)));

    const HusimiSampler mixture(PhaseAveraged{2.0, 4});
    double expected = 0.0;
    for (int k = 0; k < 4; ++k) expected += std::exp(-std::norm(cd(0.3, 0.1) - std::polar(2.0, k * pi / 2))) / (4 * pi);
    CHECK(mixture(cd(0.3, 0.1)) == doctest::Approx(expected).epsilon(1e-14));
    // Far from every component the log form stays finite.
    CHECK(std::isfinite(mixture.log_q(cd(60.0, 0.0))));
    CHECK(mixture.log_q(cd(60.0, 0.0)) == doctest::Approx(-58.0 * 58.0 - std::log(4 * pi)).epsilon(1e-12));
  }

  TEST_CASE("Husimi properties on random points") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    const HusimiSampler mixture(PhaseAveraged{3.0, 12});
    const HusimiSampler fock(Fock{4});
    for (int trial = 0; trial < 200; ++trial) {
      const cd a(coord(rng), coord(rng));
      CHECK(mixture(a) >= 0.0);
      CHECK(fock(a) >= 0.0);
      CHECK(mixture(a * std::polar(1.0, 2 * pi / 12)) == doctest::Approx(mixture(a)).epsilon(1e-10));
      CHECK(fock(a * std::polar(1.0, coord(rng))) == doctest::Approx(fock(a)).epsilon(1e-12));
    }
  }

  TEST_CASE("quadrature normalizes and reproduces moments") {
    const cd a0(2.0, 1.0);
    for (const DrivingState& d : {DrivingState{Coherent{a0}}, DrivingState{PhaseAveraged{std::abs(a0), 16}},
                                  DrivingState{Fock{0}}, DrivingState{Fock{5}}}) {
      const HusimiSampler s(d);
      CHECK(s.integrate([](cd) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(HusimiSampler(Coherent{a0}).integrate([](cd a) { return std::norm(a); }) ==
          doctest::Approx(std::norm(a0) + 1.0).epsilon(1e-12));
    CHECK(HusimiSampler(PhaseAveraged{std::abs(a0), 16}).integrate([](cd a) { return std::norm(a); }) ==
          doctest::Approx(std::norm(a0) + 1.0).epsilon(1e-12));
    for (int n = 0; n <= 5; ++n) {
      for (int q = 0; q <= 4; ++q) {
        const double moment = HusimiSampler(Fock{n}).integrate([q](cd a) { return std::pow(std::norm(a), q); });
        CHECK(moment == doctest::Approx(oracle::rising(n, q)).epsilon(1e-11));
      }
    }
    // Vanishing mean amplitude of the phase-symmetric drives.
    CHECK(std::abs(HusimiSampler(Fock{3}).integrate([](cd a) { return a.real(); })) <= 1e-13);
  }

  TEST_CASE("classical limit collapses each Gaussian") {
    const auto c = HusimiSampler(Coherent{cd(3, 4)}, {40, 64, DriveLimit::Classical}).nodes();
    REQUIRE(c.size() == 1);
    CHECK(c[0].alpha == cd(3, 4));
    const auto p = HusimiSampler(PhaseAveraged{5.0, 8}, {40, 64, DriveLimit::Classical}).nodes();
    REQUIRE(p.size() == 8);
    for (const QuadratureNode& n : p) {
      CHECK(std::abs(n.alpha) == doctest::Approx(5.0));
      CHECK(n.weight == doctest::Approx(1.0 / 8));
    }
    const auto f = HusimiSampler(Fock{7}, {40, 64, DriveLimit::Classical}).nodes();
    REQUIRE(f.size() == 1);
    CHECK(f[0].alpha == cd(0.0));
  }

  TEST_CASE("Fock moments") {
    for (int n = 0; n <= 6; ++n)
      for (int q = 0; q <= 6; ++q) CHECK(fock_moment(n, q) == doctest::Approx(oracle::rising(n, q)).epsilon(1e-15));
    CHECK(fock_moment(5, 3) == 336.0);
    CHECK(log_fock_moment(200, 300) == doctest::Approx(std::lgamma(501.0) - std::lgamma(201.0)).epsilon(1e-12));
    CHECK(fock_moment(20, 30) == doctest::Approx(std::exp(std::lgamma(51.0) - std::lgamma(21.0))).epsilon(1e-9));
    CHECK(log_fock_moment(2, 3) == doctest::Approx(std::log(60.0)));
    CHECK_THROWS_AS(fock_moment(-1, 2), ConfigError);
  }

  TEST_CASE("generalized P: diagonal, decay and normalization") {
    const cd a0(0.7, -0.3);
    const GeneralizedP p = generalized_p(Coherent{a0});
    const HusimiSampler q(Coherent{a0});
    for (cd a : {cd(0, 0), cd(1, 1), a0}) CHECK(p(a, a) == doctest::Approx(q(a) / (4 * pi)));
    const cd mid(0.5, 0.2);
    const cd alpha = mid + 3.0, beta_conj = mid - 3.0;
    CHECK(p(alpha, beta_conj) <= std::exp(-9.0) * p(mid, mid) * (1 + 1e-12));

    // Four-dimensional trapezoid rule, independent of the library's quadrature.
    for (const DrivingState& d : {DrivingState{Coherent{a0}}, DrivingState{Fock{0}}, DrivingState{Fock{2}},
                                  DrivingState{PhaseAveraged{1.0, 6}}}) {
      const GeneralizedP gp = generalized_p(d);
      const double norm = oracle::trapezoid_4d([&](cd a, cd b) { return gp(a, std::conj(b)); }, 0.0, 0.0, 10.0, 0.5);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("delta-limit probe") {
    const std::vector<double> kappas{0.1, 0.05, 0.025, 0.0125};
    for (const DeltaProbePoint& pt : delta_limit_probe(kappas, [](cd) { return 1.0; })) CHECK(pt.error <= 1e-13);

    // Normalized kernel exp(-|dE|^2 / 16 kappa^2) / (16 pi kappa^2): second moment 16 kappa^2.
    const auto pts = delta_limit_probe(kappas, [](cd e) { return std::norm(e); });
    for (const DeltaProbePoint& pt : pts) {
      CHECK(pt.error == doctest::Approx(oracle::gaussian_second_moment(16 * pt.kappa * pt.kappa)).epsilon(1e-12));
    }
    for (double r : error_ratios(pts)) CHECK(r == doctest::Approx(0.25).epsilon(1e-12));

    // Smooth functional about an offset center: error falls as kappa^2.
    const cd center(0.3, -0.1);
    const auto smooth = delta_limit_probe(kappas, [](cd e) { return std::cos(e.real()) * std::exp(-std::norm(e)); }, center);
    for (double r : error_ratios(smooth)) CHECK((r > 0.15 && r < 0.45));

    CHECK_THROWS_AS(delta_limit_probe(std::vector<double>{0.1, 0.05}, [](cd) { return 1.0; }), ScanError);
    CHECK_THROWS_AS(delta_limit_probe(kappas, [](cd e) { return 1.0 / std::abs(e); }, cd(0.0)), QuadratureError);
    CHECK_THROWS_AS(delta_limit_probe(kappas, [](cd e) { return std::exp(std::norm(e) * 1e6); }), QuadratureError);
  }

  TEST_CASE("sampler validation") {
    CHECK_THROWS_AS(HusimiSampler(Fock{-1}), ConfigError);
    CHECK_THROWS_AS(HusimiSampler(Coherent{cd(0)}, {0, 64}), ConfigError);
    CHECK_THROWS_AS(HusimiSampler(Coherent{cd(0)}, {4, 0}), ConfigError);
  }
}
