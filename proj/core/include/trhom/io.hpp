#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "trhom/sfg.hpp"
#include "trhom/whitelight.hpp"

namespace trhom {

// All files are plain text, locale-independent, with '\n' line endings.
// Floating-point values are written with 17 significant digits, enough to
// round-trip a double exactly, so identical data produces identical bytes.

std::string format_double(double v);

// "x_um,tau_fs,intensity", one row per (x, tau) cell, x-major.
void write_map_csv(const std::filesystem::path& path,
                   const InterferogramMap& map);

// "x_um,S,S_normalized" with S_normalized = S / normalization.
void write_curve_csv(const std::filesystem::path& path,
                     const Interferogram& curve, double normalization);

// "x_um,intensity,envelope".
void write_fringes_csv(const std::filesystem::path& path,
                       const FringePattern& fringes);

// Flat "key=value" report, one pair per line, in the given order.
void write_metrics(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Comma-separated numeric table with a one-line header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

// Re-reads files produced by the writers above (used for round-trip checks;
// extra columns beyond the ones needed are ignored).
Interferogram read_curve_csv(const std::filesystem::path& path);
InterferogramMap read_map_csv(const std::filesystem::path& path);

// Two numeric columns (omega_rad_per_fs, amplitude) separated by commas or
// whitespace; blank lines and lines starting with '#' are skipped. Input
// format for tabulated pulse spectra.
std::vector<std::pair<double, double>> read_two_column_table(
    const std::filesystem::path& path);

}  // namespace trhom
