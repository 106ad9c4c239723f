#include "hhgq/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hhgq/errors.hpp"
#include "hhgq/parallel.hpp"

namespace hhgq {

using std::numbers::pi;
using cd = std::complex<double>;

void QRange::validate() const {
  if (first < 1) throw ConfigError("harmonics.q_min", "harmonic orders start at 1");
  if (last < first) throw ConfigError("harmonics.q_max", "must be >= q_min");
}

std::vector<int> QRange::orders() const {
  validate();
  std::vector<int> out;
  for (int q = first; q <= last; ++q) out.push_back(q);
  return out;
}

std::vector<double> SpectrumResult::values() const {
  std::vector<double> out;
  out.reserve(lines.size());
  for (const SpectrumLine& line : lines) out.push_back(line.mean_photon_number);
  return out;
}

double SpectrumResult::at(int q) const {
  for (const SpectrumLine& line : lines)
    if (line.q == q) return line.mean_photon_number;
  throw ConfigError("q", "harmonic order " + std::to_string(q) + " not in spectrum");
}

HarmonicAmplitude harmonic_amplitude(const ComplexSeries& dipole, int q, double omega, Window window) {
  if (q < 1) throw ConfigError("q", "harmonic order must be >= 1");
  if (!(omega > 0.0)) throw ConfigError("omega", "must be > 0");
  const TimeGrid& grid = dipole.grid;
  if (dipole.values.size() != grid.size()) throw ConfigError("dipole", "values do not match the grid");
  const double nyquist = pi / grid.dt();
  if (q * omega > nyquist) {
    std::ostringstream msg;
    msg << "harmonic " << q << " (frequency " << q * omega << ") exceeds the grid Nyquist frequency "
        << nyquist;
    throw ResolutionError(msg.str());
  }

  const std::size_t n = grid.size();
  const double span = grid.duration();
  cd sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.at(i);
    double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    if (window == Window::Hann) {
      const double s = std::sin(pi * (t - grid.t0()) / span);
      w *= s * s;
    }
    sum += w * dipole.values[i] * std::polar(1.0, q * omega * t);
  }
  return {q, cd(0.0, -std::sqrt(static_cast<double>(q))) * sum * grid.dt()};
}

std::vector<HarmonicAmplitude> harmonic_amplitudes(const ComplexSeries& dipole, QRange range, double omega,
                                                   Window window) {
  std::vector<HarmonicAmplitude> out;
  for (int q : range.orders()) out.push_back(harmonic_amplitude(dipole, q, omega, window));
  return out;
}

namespace {

SpectrumResult make_spectrum(const std::vector<int>& orders, const std::vector<double>& values,
                             std::string drive, std::string engine, const TimeGrid& grid) {
  SpectrumResult out;
  for (std::size_t k = 0; k < orders.size(); ++k) out.lines.push_back({orders[k], values[k]});
  out.drive = std::move(drive);
  out.engine = std::move(engine);
  out.t0 = grid.t0();
  out.dt = grid.dt();
  out.n = grid.size();
  return out;
}

}  // namespace

SpectrumResult spectrum_coherent(const DipoleEngine& engine, const FieldConfig& config, const TimeGrid& grid,
                                 QRange range, Window window) {
  const std::vector<int> orders = range.orders();
  const ComplexSeries dipole = engine.evaluate(config, grid);
  std::vector<double> values;
  for (int q : orders) values.push_back(std::norm(harmonic_amplitude(dipole, q, config.omega, window).value));
  return make_spectrum(orders, values, "coherent", engine.name(), grid);
}

SpectrumResult spectrum_ensemble(const HusimiSampler& sampler, const DipoleEngine& engine,
                                 const FieldConfig& base, const TimeGrid& grid, QRange range, Window window) {
  const std::vector<int> orders = range.orders();
  const std::vector<QuadratureNode> nodes = sampler.nodes();
  base.validate();

  std::vector<std::vector<double>> per_node(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) {
    const ComplexSeries dipole = engine.evaluate(base.with_alpha(nodes[k].alpha), grid);
    std::vector<double> v;
    v.reserve(orders.size());
    for (int q : orders) v.push_back(std::norm(harmonic_amplitude(dipole, q, base.omega, window).value));
    per_node[k] = std::move(v);
  });

  std::vector<double> values(orders.size(), 0.0);
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (std::size_t i = 0; i < orders.size(); ++i) values[i] += nodes[k].weight * per_node[k][i];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw QuadratureError("ensemble spectrum not finite at q=" + std::to_string(orders[i]));
    }
  }
  return make_spectrum(orders, values, drive_name(sampler.drive()), engine.name(), grid);
}

std::vector<FockScanPoint> fock_limit_scan(int n, std::span<const double> kappa_values,
                                           const ToyDipoleParams& params, const FieldConfig& base,
                                           const TimeGrid& grid, QRange range, QuadratureSpec spec) {
  if (kappa_values.size() < 3) throw ScanError("fock_limit_scan needs at least 3 kappa values");
  if (n < 0) throw ConfigError("n", "photon number must be >= 0");
  const DipoleEngine engine = DipoleEngine::toy(params);
  const HusimiSampler sampler(Fock{n}, spec);
  std::vector<FockScanPoint> out;
  for (double kappa : kappa_values) {
    FieldConfig config = base;
    config.kappa = kappa;
    out.push_back({kappa, spectrum_ensemble(sampler, engine, config, grid, range)});
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ScanError("slope fit needs >= 2 matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ScanError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw ScanError("log-log fit needs distinct x values");
  return (m * sxy - sx * sy) / denom;
}

PlateauAnalysis analyze_plateau(const SpectrumResult& spectrum, int plateau_start, double plateau_decades) {
  std::vector<std::pair<int, double>> odd;
  for (const SpectrumLine& line : spectrum.lines) {
    if (line.q % 2 == 1 && line.q >= plateau_start && line.mean_photon_number > 0.0) {
      odd.emplace_back(line.q, std::log10(line.mean_photon_number));
    }
  }
  PlateauAnalysis out;
  if (odd.size() < 2) return out;

  double peak = -INFINITY;
  for (const auto& [q, level] : odd) peak = std::max(peak, level);

  // Last odd line that is a local maximum and still within plateau_decades of
  // the strongest plateau line.
  std::size_t last = 0;
  for (std::size_t k = 0; k + 1 < odd.size(); ++k) {
    const bool left = k == 0 || odd[k].second >= odd[k - 1].second;
    const bool right = odd[k].second >= odd[k + 1].second;
    if (left && right && odd[k].second >= peak - plateau_decades) last = k;
  }
  out.cutoff_order = odd[last].first;

  std::vector<double> levels;
  for (std::size_t k = 0; k <= last; ++k) levels.push_back(odd[k].second);
  std::sort(levels.begin(), levels.end());
  const std::size_t mid = levels.size() / 2;
  out.plateau_level = levels.size() % 2 ? levels[mid] : 0.5 * (levels[mid - 1] + levels[mid]);
  out.drop_decades = out.plateau_level - odd.back().second;

  // Even lines inside the plateau against their weaker odd neighbour.
  out.odd_even_contrast = INFINITY;
  for (const SpectrumLine& line : spectrum.lines) {
    if (line.q % 2 != 0 || line.q > out.cutoff_order) continue;
    double neighbour = INFINITY;
    bool found = false;
    for (const SpectrumLine& other : spectrum.lines) {
      if (other.q == line.q - 1 || other.q == line.q + 1) {
        neighbour = std::min(neighbour, other.mean_photon_number);
        found = true;
      }
    }
    if (!found) continue;
    const double ratio = line.mean_photon_number > 0.0 ? neighbour / line.mean_photon_number : INFINITY;
    out.odd_even_contrast = std::min(out.odd_even_contrast, ratio);
  }
  return out;
}

}  // namespace hhgq
