// hhgq: dipole | spectrum | state | scenario --config <path> [--out <dir>] [--threads N] [-v]
//
// Exit codes: 0 success, 1 invalid input or I/O failure, 2 failing evidence.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hhgq/config.hpp"
#include "hhgq/errors.hpp"
#include "hhgq/io.hpp"
#include "hhgq/parallel.hpp"
#include "hhgq/run.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  int threads = 0;
  bool verbose = false;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw hhgq::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void report(const Options& opt, const fs::path& path) {
  if (opt.verbose) std::cerr << "wrote " << path.string() << "\n";
}

int run_dipole(const Options& opt, const hhgq::ProjectConfig& cfg) {
  const hhgq::ComplexSeries dipole = hhgq::compute_dipole(cfg);
  ensure_dir(opt.out);
  const fs::path path = fs::path(opt.out) / "dipole.csv";
  hhgq::write_dipole_csv(path, dipole);
  report(opt, path);
  return 0;
}

int run_spectrum(const Options& opt, const hhgq::ProjectConfig& cfg) {
  const hhgq::SpectrumResult spectrum = hhgq::compute_spectrum(cfg);
  ensure_dir(opt.out);
  const fs::path csv = fs::path(opt.out) / "spectrum.csv";
  const fs::path json = fs::path(opt.out) / "spectrum.json";
  hhgq::write_spectrum_csv(csv, spectrum);
  hhgq::write_json(json, hhgq::to_json(spectrum));
  report(opt, csv);
  report(opt, json);
  return 0;
}

int run_state(const Options& opt, const hhgq::ProjectConfig& cfg) {
  const hhgq::ModeDensityMatrix rho = hhgq::compute_state(cfg);
  ensure_dir(opt.out);
  const fs::path dir(opt.out);
  const std::string tag = "q" + std::to_string(rho.q());
  hhgq::write_density_csv(dir / ("rho_" + tag + ".csv"), rho);
  hhgq::write_json(dir / ("rho_" + tag + ".json"), hhgq::to_json(rho));
  hhgq::write_json(dir / ("coherence_" + tag + ".json"), hhgq::to_json(hhgq::coherence_report(rho)));
  report(opt, dir / ("rho_" + tag + ".csv"));
  report(opt, dir / ("rho_" + tag + ".json"));
  report(opt, dir / ("coherence_" + tag + ".json"));
  if (cfg.husimi) {
    const hhgq::HusimiSampler sampler(cfg.drive_or_field(), cfg.quadrature);
    hhgq::write_husimi_csv(dir / "husimi.csv", sampler, cfg.husimi->center, cfg.husimi->half_width,
                           cfg.husimi->points);
    report(opt, dir / "husimi.csv");
  }
  return 0;
}

int run_scenario(const Options& opt, const hhgq::ProjectConfig& cfg) {
  const hhgq::ScenarioResult result = hhgq::run_scenario(cfg.require_scenario());
  for (const fs::path& path : hhgq::emit_report(result, opt.out)) report(opt, path);
  for (const hhgq::EvidenceRecord& r : result.records) {
    if (opt.verbose || !r.pass) std::cerr << (r.pass ? "PASS " : "FAIL ") << r.claim << ": " << r.description << "\n";
  }
  std::cout << hhgq::to_string(result.id) << ": " << (result.all_passed() ? "all checks passed" : "checks failed")
            << "\n";
  return result.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-optical high-harmonic generation toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "TOML configuration file")->required();
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--threads", opt.threads, "worker thread cap (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_flag("-v,--verbose", opt.verbose, "list written files and evidence records");
  };
  CLI::App* dipole = app.add_subcommand("dipole", "write the dipole series d(t)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "write the harmonic spectrum");
  CLI::App* state = app.add_subcommand("state", "write a harmonic-mode density matrix");
  CLI::App* scenario = app.add_subcommand("scenario", "run a demonstration scenario and write its evidence");
  for (CLI::App* sub : {dipole, spectrum, state, scenario}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    hhgq::set_thread_limit(static_cast<unsigned>(opt.threads));
    const hhgq::ProjectConfig cfg = hhgq::load_config(opt.config);
    if (dipole->parsed()) return run_dipole(opt, cfg);
    if (spectrum->parsed()) return run_spectrum(opt, cfg);
    if (state->parsed()) return run_state(opt, cfg);
    return run_scenario(opt, cfg);
  } catch (const hhgq::ConfigError& e) {
    std::cerr << "hhgq: invalid configuration: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "hhgq: " << e.what() << "\n";
  }
  return 1;
}
