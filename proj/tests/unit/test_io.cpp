#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "hhgq/dipole.hpp"
#include "hhgq/errors.hpp"
#include "hhgq/harmonics.hpp"
#include "hhgq/io.hpp"
#include "hhgq/phasespace.hpp"
#include "scratch.hpp"

using namespace hhgq;
using cd = std::complex<double>;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("doubles round-trip bit for bit") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
      double x;
      const std::uint64_t bits = rng();
      std::memcpy(&x, &bits, sizeof x);
      if (!std::isfinite(x) || x == 0.0) continue;
      const double y = parse_double(format_double(x), "test");
      CHECK(std::memcmp(&x, &y, sizeof x) == 0);
    }
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.1) == "0.1");
    CHECK_THROWS_AS(parse_double("1.5x", "ctx"), IoError);
    CHECK_THROWS_AS(parse_int("2.0", "ctx"), IoError);
    CHECK(parse_int("-17", "ctx") == -17);
  }

  TEST_CASE("csv tables") {
    ScratchDir dir;
    const CsvTable t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
    write_csv(dir / "t.csv", t);
    CHECK(slurp(dir / "t.csv") == "a,b\n1,2\n3,4\n");
    CHECK(read_csv(dir / "t.csv", {"a", "b"}).rows == t.rows);
    CHECK_THROWS_AS(read_csv(dir / "t.csv", {"a", "c"}), IoError);
    CHECK_THROWS_AS(read_csv(dir / "missing.csv", {"a"}), IoError);
    std::ofstream(dir / "ragged.csv") << "a,b\n1,2\n3\n";
    CHECK_THROWS_AS(read_csv(dir / "ragged.csv", {"a", "b"}), IoError);
    CHECK_FALSE(std::filesystem::exists(dir / "t.csv.tmp"));
  }

  TEST_CASE("unwritable destinations raise IoError") {
    ScratchDir dir;
    std::ofstream(dir / "file") << "x";
    CHECK_THROWS_AS(write_csv(dir / "file" / "t.csv", CsvTable{{"a"}, {}}), IoError);
  }

  TEST_CASE("density matrices round-trip") {
    ScratchDir dir;
    const ModeDensityMatrix dense = coherent_mode_state(std::polar(1.3, 0.4), 20, kPoissonTailTolerance, 3);
    write_density_csv(dir / "rho.csv", dense);
    const ModeDensityMatrix back = read_density_csv(dir / "rho.csv", 3);
    CHECK_FALSE(back.is_diagonal_storage());
    CHECK(back.to_dense() == dense.to_dense());
    CHECK(slurp(dir / "rho.csv").rfind("n,m,re,im\n", 0) == 0);

    const ModeDensityMatrix diag = poisson_mode_state(3.0, 40);
    write_density_csv(dir / "diag.csv", diag);
    const ModeDensityMatrix diag_back = read_density_csv(dir / "diag.csv");
    CHECK(diag_back.is_diagonal_storage());
    CHECK(diag_back.to_dense() == diag.to_dense());

    const ModeDensityMatrix from_json = density_from_json(to_json(dense));
    CHECK(from_json.q() == 3);
    CHECK(from_json.to_dense() == dense.to_dense());
    CHECK(density_from_json(to_json(diag)).is_diagonal_storage());
    CHECK(to_json(coherence_report(dense))["schema"] == "hhgq.coherence/1");
  }

  TEST_CASE("dipole series round-trip") {
    ScratchDir dir;
    FieldConfig f;
    f.alpha_abs = 265.0;
    const TimeGrid g = TimeGrid::for_field(f, 32);
    const ComplexSeries d = toy_dipole(f, g, ToyDipoleParams::monomial({1, 3}, 0.1, 0.053));
    write_dipole_csv(dir / "d.csv", d);
    CHECK(slurp(dir / "d.csv").rfind("t,re_d,im_d\n", 0) == 0);
    const ComplexSeries back = read_dipole_csv(dir / "d.csv");
    CHECK(back.values == d.values);
    CHECK(back.grid.size() == g.size());
    CHECK(back.grid.dt() == doctest::Approx(g.dt()).epsilon(1e-12));
  }

  TEST_CASE("spectra round-trip through csv and json") {
    ScratchDir dir;
    SpectrumResult s;
    for (int q = 1; q <= 9; ++q) s.lines.push_back({q, 1.0 / (q * 3.0)});
    s.drive = "coherent";
    s.engine = "toy";
    s.dt = 0.25;
    s.n = 513;
    write_spectrum_csv(dir / "s.csv", s);
    const SpectrumResult back = read_spectrum_csv(dir / "s.csv");
    REQUIRE(back.lines.size() == s.lines.size());
    for (std::size_t k = 0; k < s.lines.size(); ++k) {
      CHECK(back.lines[k].q == s.lines[k].q);
      CHECK(back.lines[k].mean_photon_number == s.lines[k].mean_photon_number);
    }
    write_json(dir / "s.json", to_json(s));
    const SpectrumResult j = spectrum_from_json(read_json(dir / "s.json"));
    CHECK(j.values() == s.values());
    CHECK(j.n == 513);
    CHECK(j.engine == "toy");
    CHECK_THROWS_AS(spectrum_from_json(nlohmann::json{{"lines", 3}}), IoError);
    CHECK(slurp(dir / "s.json").find('\r') == std::string::npos);
  }

  TEST_CASE("husimi grids") {
    ScratchDir dir;
    write_husimi_csv(dir / "q.csv", HusimiSampler(Coherent{cd(1.0, 0.0)}), cd(1.0, 0.0), 2.0, 5);
    const CsvTable t = read_csv(dir / "q.csv", {"re_alpha", "im_alpha", "q"});
    REQUIRE(t.rows.size() == 25);
    // Centre cell holds the peak value 1/pi.
    CHECK(parse_double(t.rows[12][2], "q") == doctest::Approx(1.0 / std::numbers::pi));
    CHECK_THROWS_AS(write_husimi_csv(dir / "bad.csv", HusimiSampler(Fock{1}), 0.0, 2.0, 1), ConfigError);
  }
}
