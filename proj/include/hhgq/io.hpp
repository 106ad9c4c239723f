#pragma once

// File formats shared by the CLI, the scenarios and the Python bindings.
//
// CSV: comma separated, one header row, '.' decimal point, LF line endings.
// Floating-point values use the shortest representation that round-trips.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hhgq/quantum_state.hpp"

namespace hhgq {

/// Shortest round-trip decimal representation.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Writes through a temporary file, so readers never see partial tables.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Throws IoError on unreadable files, ragged rows or a header other than
/// `expected_header`.
CsvTable read_csv(const std::filesystem::path& path, const std::vector<std::string>& expected_header);
double parse_double(const std::string& text, const std::string& context);
long parse_int(const std::string& text, const std::string& context);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Columns n, m, re, im. Dense states list every entry in row-major order,
/// diagonal states list only n == m rows.
void write_density_csv(const std::filesystem::path& path, const ModeDensityMatrix& rho);
ModeDensityMatrix read_density_csv(const std::filesystem::path& path, int q = 0);

nlohmann::json to_json(const ModeDensityMatrix& rho);
ModeDensityMatrix density_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoherenceReport& report);

}  // namespace hhgq
