#include "trhom/io.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <system_error>

#include "trhom/errors.hpp"

namespace trhom {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw IoFailure("cannot create directory " +
                      path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream os(path, std::ios::binary);  // keep '\n' endings everywhere
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  return os;
}

void finish_write(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoFailure("write failed for " + path.string());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoFailure("cannot open " + path.string() + " for reading");
  return is;
}

double parse_double(const std::string& token, const std::filesystem::path& path,
                    std::size_t line_no) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw IoFailure("bad number '" + token + "' at " + path.string() +
                    " line " + std::to_string(line_no));
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc())
    throw NumericFailure("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_map_csv(const std::filesystem::path& path,
                   const InterferogramMap& map) {
  std::ofstream os = open_for_write(path);
  os << "x_um,tau_fs,intensity\n";
  for (std::size_t i = 0; i < map.x_axis().size(); ++i)
    for (std::size_t j = 0; j < map.tau_axis().size(); ++j)
      os << format_double(map.x_axis()[i]) << ','
         << format_double(map.tau_axis()[j]) << ','
         << format_double(map.at(i, j)) << '\n';
  finish_write(os, path);
}

void write_curve_csv(const std::filesystem::path& path,
                     const Interferogram& curve, double normalization) {
  if (!(normalization > 0.0) || !std::isfinite(normalization))
    throw InvalidInput("write_curve_csv: normalization must be positive");
  std::ofstream os = open_for_write(path);
  os << "x_um,S,S_normalized\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    os << format_double(curve.x_axis()[i]) << ','
       << format_double(curve.values()[i]) << ','
       << format_double(curve.values()[i] / normalization) << '\n';
  finish_write(os, path);
}

void write_fringes_csv(const std::filesystem::path& path,
                       const FringePattern& fringes) {
  std::ofstream os = open_for_write(path);
  os << "x_um,intensity,envelope\n";
  for (std::size_t i = 0; i < fringes.x_axis().size(); ++i)
    os << format_double(fringes.x_axis()[i]) << ','
       << format_double(fringes.intensity()[i]) << ','
       << format_double(fringes.envelope()[i]) << '\n';
  finish_write(os, path);
}

void write_metrics(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream os = open_for_write(path);
  for (const auto& [key, value] : kv) os << key << '=' << value << '\n';
  finish_write(os, path);
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream os = open_for_write(path);
  os << content;
  finish_write(os, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is = open_for_read(path);
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line))
    throw IoFailure("empty file: " + path.string());
  ++line_no;
  table.header = split_fields(line);
  if (table.header.empty())
    throw IoFailure("missing header in " + path.string());
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != table.header.size())
      throw IoFailure("row with " + std::to_string(fields.size()) +
                      " fields, expected " +
                      std::to_string(table.header.size()) + " at " +
                      path.string() + " line " + std::to_string(line_no));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, path, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Interferogram read_curve_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2)
    throw IoFailure("curve file needs at least two columns: " + path.string());
  std::vector<double> x, v;
  x.reserve(table.rows.size());
  v.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    x.push_back(row[0]);
    v.push_back(row[1]);
  }
  return Interferogram(std::move(x), std::move(v));
}

InterferogramMap read_map_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 3)
    throw IoFailure("map file needs three columns: " + path.string());
  if (table.rows.empty()) throw IoFailure("map file has no rows: " + path.string());
  // Rows are x-major; the tau axis is the first block, repeated per x value.
  std::vector<double> tau;
  for (const auto& row : table.rows) {
    if (row[0] != table.rows.front()[0]) break;
    tau.push_back(row[1]);
  }
  if (tau.empty() || table.rows.size() % tau.size() != 0)
    throw IoFailure("map file rows do not form a full grid: " + path.string());
  const std::size_t nx = table.rows.size() / tau.size();
  std::vector<double> x(nx);
  std::vector<double> intensity(table.rows.size());
  for (std::size_t i = 0; i < nx; ++i) {
    x[i] = table.rows[i * tau.size()][0];
    for (std::size_t j = 0; j < tau.size(); ++j) {
      const auto& row = table.rows[i * tau.size() + j];
      if (row[0] != x[i] || row[1] != tau[j])
        throw IoFailure("map file grid is not consistent: " + path.string());
      intensity[i * tau.size() + j] = row[2];
    }
  }
  return InterferogramMap(std::move(x), std::move(tau), std::move(intensity));
}

std::vector<std::pair<double, double>> read_two_column_table(
    const std::filesystem::path& path) {
  std::ifstream is = open_for_read(path);
  std::vector<std::pair<double, double>> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string stripped = line;
    if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
    std::size_t first = stripped.find_first_not_of(" \t");
    if (first == std::string::npos || stripped[first] == '#') continue;
    const std::vector<std::string> fields = split_fields(stripped);
    if (fields.size() != 2)
      throw IoFailure("expected two columns at " + path.string() + " line " +
                      std::to_string(line_no));
    points.emplace_back(parse_double(fields[0], path, line_no),
                        parse_double(fields[1], path, line_no));
  }
  if (points.empty()) throw IoFailure("no data rows in " + path.string());
  return points;
}

}  // namespace trhom
