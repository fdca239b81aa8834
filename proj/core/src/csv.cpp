// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qoreduce/errors.hpp"

namespace qoreduce {

namespace {

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

double ParseCell(const std::string& cell, const std::string& source, std::size_t line) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::istringstream in(cell);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (!(in >> v)) throw ConfigError(source + ":" + std::to_string(line) + ": bad number '" + cell + "'");
  return v;
}

}  // namespace

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& full, const SweepResult* reduced) {
  if (reduced && reduced->grid_hz != full.grid_hz) {
    throw ConfigError("full and reduced sweeps use different grids");
  }
  out << "omega_hz,full_re,full_im";
  if (reduced) out << ",reduced_re,reduced_im,relerr";
  out << '\n';
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto& h = full.values[i];
    out << FormatDouble(full.grid_hz[i]) << ',' << FormatDouble(h ? h->real() : kNan) << ','
        << FormatDouble(h ? h->imag() : kNan);
    if (reduced) {
      const auto& hr = reduced->values[i];
      double rel = kNan;
      if (h && hr) {
        const double diff = std::abs(*h - *hr);
        rel = std::abs(*h) > 0.0 ? diff / std::abs(*h) : diff;
      }
      out << ',' << FormatDouble(hr ? hr->real() : kNan) << ',' << FormatDouble(hr ? hr->imag() : kNan)
          << ',' << FormatDouble(rel);
    }
    out << '\n';
  }
}

void WriteSweepCsv(const std::filesystem::path& path, const SweepResult& full,
                   const SweepResult* reduced) {
  std::ofstream out = OpenForWrite(path);
  WriteSweepCsv(out, full, reduced);
  if (!out) throw ConfigError("write failed: " + path.string());
}

SweepTable ReadSweepCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  const std::string source = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(source + ": empty file");
  const auto header = SplitRow(line);
  const bool has_reduced = header.size() == 6;
  if (!(header.size() == 3 || has_reduced) || header[0] != "omega_hz" || header[1] != "full_re" ||
      header[2] != "full_im") {
    throw ConfigError(source + ": unexpected header '" + line + "'");
  }
  SweepTable table;
  table.full.label = "full";
  if (has_reduced) table.reduced.emplace().label = "reduced";
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = SplitRow(line);
    if (cells.size() != header.size()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(header.size()) + " columns");
    }
    const double f = ParseCell(cells[0], source, lineno);
    const double re = ParseCell(cells[1], source, lineno);
    const double im = ParseCell(cells[2], source, lineno);
    table.full.grid_hz.push_back(f);
    table.full.values.push_back(std::isnan(re) || std::isnan(im) ? std::nullopt
                                                                  : std::optional<Complex>(Complex(re, im)));
    if (has_reduced) {
      const double rre = ParseCell(cells[3], source, lineno);
      const double rim = ParseCell(cells[4], source, lineno);
      table.reduced->grid_hz.push_back(f);
      table.reduced->values.push_back(std::isnan(rre) || std::isnan(rim)
                                          ? std::nullopt
                                          : std::optional<Complex>(Complex(rre, rim)));
    }
  }
  return table;
}

void WriteErrorReportCsv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  out << "method,order,h2_approx_relerr,hinf_relerr,points\n";
  for (const auto& r : reports) {
    out << r.method << ',' << r.order << ',' << FormatDouble(r.h2_relerr) << ','
        << FormatDouble(r.hinf_relerr) << ',' << r.grid_hz.size() << '\n';
  }
}

void WriteErrorReportCsv(const std::filesystem::path& path, const std::vector<ErrorReport>& reports) {
  std::ofstream out = OpenForWrite(path);
  WriteErrorReportCsv(out, reports);
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace qoreduce
