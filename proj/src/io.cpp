#include "hhgq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hhgq/dipole.hpp"
#include "hhgq/errors.hpp"
#include "hhgq/harmonics.hpp"
#include "hhgq/phasespace.hpp"

namespace hhgq {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format_double(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& context) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) throw IoError(context + ": not a number: '" + text + "'");
  return value;
}

long parse_int(const std::string& text, const std::string& context) {
  long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) throw IoError(context + ": not an integer: '" + text + "'");
  return value;
}

namespace {

void write_atomically(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_csv(const fs::path& path, const CsvTable& table) {
  std::string out;
  auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += row[k];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  write_atomically(path, out);
}

CsvTable read_csv(const fs::path& path, const std::vector<std::string>& expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  table.header = split_line(line);
  if (table.header != expected_header) {
    std::string expected;
    for (const auto& h : expected_header) expected += (expected.empty() ? "" : ",") + h;
    throw IoError(path.string() + ": expected header '" + expected + "', got '" + line + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != expected_header.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(expected_header.size()) + " columns");
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_json(const fs::path& path, const json& j) { write_atomically(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

// -- density matrices -------------------------------------------------------

void write_density_csv(const fs::path& path, const ModeDensityMatrix& rho) {
  CsvTable table{{"n", "m", "re", "im"}, {}};
  for (int n = 0; n < rho.dim(); ++n) {
    for (int m = 0; m < rho.dim(); ++m) {
      if (rho.is_diagonal_storage() && n != m) continue;
      const auto v = rho(n, m);
      table.rows.push_back({std::to_string(n), std::to_string(m), format_double(v.real()), format_double(v.imag())});
    }
  }
  write_csv(path, table);
}

ModeDensityMatrix read_density_csv(const fs::path& path, int q) {
  const CsvTable table = read_csv(path, {"n", "m", "re", "im"});
  if (table.rows.empty()) throw IoError(path.string() + ": no entries");
  long n_max = 0;
  bool diagonal_only = true;
  for (const auto& row : table.rows) {
    const long n = parse_int(row[0], path.string()), m = parse_int(row[1], path.string());
    if (n < 0 || m < 0) throw IoError(path.string() + ": negative Fock index");
    n_max = std::max({n_max, n, m});
    diagonal_only = diagonal_only && n == m;
  }
  const int dim = static_cast<int>(n_max) + 1;
  if (diagonal_only && static_cast<long>(table.rows.size()) != dim * static_cast<long>(dim)) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    for (const auto& row : table.rows) diag(parse_int(row[0], path.string())) = parse_double(row[2], path.string());
    return ModeDensityMatrix::diagonal(q, std::move(diag));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& row : table.rows) {
    m(parse_int(row[0], path.string()), parse_int(row[1], path.string())) = {
        parse_double(row[2], path.string()), parse_double(row[3], path.string())};
  }
  return ModeDensityMatrix::dense(q, std::move(m));
}

json to_json(const ModeDensityMatrix& rho) {
  json j{{"schema", "hhgq.density/1"}, {"q", rho.q()}, {"n_max", rho.n_max()}};
  if (rho.is_diagonal_storage()) {
    j["storage"] = "diagonal";
    j["diagonal"] = photon_distribution(rho);
    return j;
  }
  j["storage"] = "dense";
  json re = json::array(), im = json::array();
  for (int n = 0; n < rho.dim(); ++n) {
    std::vector<double> r(rho.dim()), i(rho.dim());
    for (int m = 0; m < rho.dim(); ++m) {
      r[m] = rho(n, m).real();
      i[m] = rho(n, m).imag();
    }
    re.push_back(r);
    im.push_back(i);
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

ModeDensityMatrix density_from_json(const json& j) {
  try {
    const int q = j.at("q").get<int>();
    const int dim = j.at("n_max").get<int>() + 1;
    if (j.at("storage") == "diagonal") {
      const auto d = j.at("diagonal").get<std::vector<double>>();
      if (static_cast<int>(d.size()) != dim) throw IoError("density json: diagonal length mismatch");
      return ModeDensityMatrix::diagonal(q, Eigen::Map<const Eigen::VectorXd>(d.data(), dim));
    }
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("im").get<std::vector<std::vector<double>>>();
    Eigen::MatrixXcd m(dim, dim);
    for (int n = 0; n < dim; ++n)
      for (int k = 0; k < dim; ++k) m(n, k) = {re.at(n).at(k), im.at(n).at(k)};
    return ModeDensityMatrix::dense(q, std::move(m));
  } catch (const json::exception& e) {
    throw IoError(std::string("density json: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw IoError(std::string("density json: ") + e.what());
  }
}

json to_json(const CoherenceReport& report) {
  return {{"schema", "hhgq.coherence/1"},
          {"l1_offdiagonal", report.l1_offdiagonal},
          {"mean_a", {{"re", report.mean_a.real()}, {"im", report.mean_a.imag()}}},
          {"mean_photon", report.mean_photon},
          {"photon_distribution", report.photon_distribution}};
}

// -- dipole series ----------------------------------------------------------

void write_dipole_csv(const fs::path& path, const ComplexSeries& dipole) {
  CsvTable table{{"t", "re_d", "im_d"}, {}};
  for (std::size_t i = 0; i < dipole.values.size(); ++i) {
    table.rows.push_back({format_double(dipole.grid.at(i)), format_double(dipole.values[i].real()),
                          format_double(dipole.values[i].imag())});
  }
  write_csv(path, table);
}

ComplexSeries read_dipole_csv(const fs::path& path) {
  const CsvTable table = read_csv(path, {"t", "re_d", "im_d"});
  if (table.rows.size() < 2) throw IoError(path.string() + ": need at least two samples");
  const std::string ctx = path.string();
  const double t0 = parse_double(table.rows.front()[0], ctx);
  const double t1 = parse_double(table.rows.back()[0], ctx);
  const std::size_t n = table.rows.size();
  const double dt = (t1 - t0) / static_cast<double>(n - 1);
  TimeGrid grid(t0, dt, n);
  ComplexSeries out{grid, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = table.rows[i];
    if (std::abs(parse_double(row[0], ctx) - grid.at(i)) > 1e-9 * std::max(1.0, std::abs(grid.at(i)))) {
      throw IoError(ctx + ": time column is not uniformly spaced");
    }
    out.values.emplace_back(parse_double(row[1], ctx), parse_double(row[2], ctx));
  }
  return out;
}

// -- spectra ----------------------------------------------------------------

json to_json(const SpectrumResult& spectrum) {
  json lines = json::array();
  for (const SpectrumLine& line : spectrum.lines) {
    lines.push_back({{"q", line.q}, {"mean_photon_number", line.mean_photon_number}});
  }
  return {{"schema", "hhgq.spectrum/1"},
          {"drive", spectrum.drive},
          {"engine", spectrum.engine},
          {"grid", {{"t0", spectrum.t0}, {"dt", spectrum.dt}, {"n", spectrum.n}}},
          {"lines", lines}};
}

SpectrumResult spectrum_from_json(const json& j) {
  try {
    SpectrumResult out;
    out.drive = j.at("drive").get<std::string>();
    out.engine = j.at("engine").get<std::string>();
    out.t0 = j.at("grid").at("t0").get<double>();
    out.dt = j.at("grid").at("dt").get<double>();
    out.n = j.at("grid").at("n").get<std::size_t>();
    for (const auto& line : j.at("lines")) {
      out.lines.push_back({line.at("q").get<int>(), line.at("mean_photon_number").get<double>()});
    }
    return out;
  } catch (const json::exception& e) {
    throw IoError(std::string("spectrum json: ") + e.what());
  }
}

void write_spectrum_csv(const fs::path& path, const SpectrumResult& spectrum) {
  CsvTable table{{"q", "value"}, {}};
  for (const SpectrumLine& line : spectrum.lines) {
    table.rows.push_back({std::to_string(line.q), format_double(line.mean_photon_number)});
  }
  write_csv(path, table);
}

SpectrumResult read_spectrum_csv(const fs::path& path) {
  const CsvTable table = read_csv(path, {"q", "value"});
  SpectrumResult out;
  for (const auto& row : table.rows) {
    out.lines.push_back({static_cast<int>(parse_int(row[0], path.string())), parse_double(row[1], path.string())});
  }
  return out;
}

// -- husimi grids -----------------------------------------------------------

void write_husimi_csv(const fs::path& path, const HusimiSampler& sampler, std::complex<double> center,
                      double half_width, int points) {
  if (points < 2) throw ConfigError("husimi.points", "must be >= 2");
  if (!(half_width > 0.0)) throw ConfigError("husimi.half_width", "must be > 0");
  CsvTable table{{"re_alpha", "im_alpha", "q"}, {}};
  const double step = 2.0 * half_width / (points - 1);
  for (int iy = 0; iy < points; ++iy) {
    for (int ix = 0; ix < points; ++ix) {
      const std::complex<double> alpha = center + std::complex<double>(-half_width + ix * step, -half_width + iy * step);
      table.rows.push_back({format_double(alpha.real()), format_double(alpha.imag()), format_double(sampler(alpha))});
    }
  }
  write_csv(path, table);
}

}  // namespace hhgq
