// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "qoreduce/errors.hpp"

namespace qoreduce {

namespace {

enum class Layout { kCoordinate, kArray };
enum class Field { kReal, kComplex, kInteger, kPattern };
enum class Symmetry { kGeneral, kSymmetric, kHermitian, kSkew };

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void Fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

struct Header {
  Layout layout;
  Field field;
  Symmetry symmetry;
};

Header ParseHeader(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string banner, object, layout, field, symmetry;
  in >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket") Fail(source, 1, "missing %%MatrixMarket banner");
  object = Lower(object);
  layout = Lower(layout);
  field = Lower(field);
  symmetry = Lower(symmetry);
  if (object != "matrix") Fail(source, 1, "unsupported object '" + object + "'");
  Header h{};
  if (layout == "coordinate") {
    h.layout = Layout::kCoordinate;
  } else if (layout == "array") {
    h.layout = Layout::kArray;
  } else {
    Fail(source, 1, "unsupported layout '" + layout + "'");
  }
  if (field == "real" || field == "double") {
    h.field = Field::kReal;
  } else if (field == "complex") {
    h.field = Field::kComplex;
  } else if (field == "integer") {
    h.field = Field::kInteger;
  } else if (field == "pattern") {
    h.field = Field::kPattern;
  } else {
    Fail(source, 1, "unsupported field '" + field + "'");
  }
  if (symmetry == "general") {
    h.symmetry = Symmetry::kGeneral;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::kSymmetric;
  } else if (symmetry == "hermitian") {
    h.symmetry = Symmetry::kHermitian;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = Symmetry::kSkew;
  } else {
    Fail(source, 1, "unsupported symmetry '" + symmetry + "'");
  }
  if (h.layout == Layout::kArray && h.field == Field::kPattern) {
    Fail(source, 1, "pattern field is not allowed with the array layout");
  }
  if (h.symmetry == Symmetry::kHermitian && h.field != Field::kComplex) {
    Fail(source, 1, "hermitian symmetry requires a complex field");
  }
  return h;
}

Complex ReadValue(std::istringstream& in, Field field, const std::string& source, std::size_t line) {
  double re = 1.0, im = 0.0;
  switch (field) {
    case Field::kPattern: break;
    case Field::kComplex:
      if (!(in >> re >> im)) Fail(source, line, "expected two numbers for a complex entry");
      break;
    case Field::kInteger: {
      long long v = 0;
      if (!(in >> v)) Fail(source, line, "expected an integer entry");
      re = static_cast<double>(v);
      break;
    }
    case Field::kReal:
      if (!(in >> re)) Fail(source, line, "expected a real entry");
      break;
  }
  return {re, im};
}

// Next line that is neither blank nor a comment.
bool NextDataLine(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

bool AllReal(const SparseMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

MatrixMarketData ReadMatrixMarket(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) Fail(source, 1, "empty file");
  ++lineno;
  const Header h = ParseHeader(line, source);
  if (!NextDataLine(in, line, lineno)) Fail(source, lineno, "missing size line");

  MatrixMarketData out;
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols)) Fail(source, lineno, "malformed size line");
  if (h.layout == Layout::kCoordinate && !(size_line >> nnz)) Fail(source, lineno, "missing entry count");
  if (rows < 0 || cols < 0 || nnz < 0) Fail(source, lineno, "negative dimensions");
  if (h.symmetry != Symmetry::kGeneral && rows != cols) {
    Fail(source, lineno, "symmetric storage requires a square matrix");
  }

  std::map<std::pair<Index, Index>, Complex> entries;
  std::size_t duplicates = 0;
  auto add = [&](Index i, Index j, Complex v) {
    auto [it, inserted] = entries.try_emplace({i, j}, v);
    if (!inserted) {
      it->second += v;
      ++duplicates;
    }
    if (i == j) return;
    switch (h.symmetry) {
      case Symmetry::kGeneral: break;
      case Symmetry::kSymmetric: entries[{j, i}] += v; break;
      case Symmetry::kHermitian: entries[{j, i}] += std::conj(v); break;
      case Symmetry::kSkew: entries[{j, i}] -= v; break;
    }
  };

  if (h.layout == Layout::kCoordinate) {
    for (long long k = 0; k < nnz; ++k) {
      if (!NextDataLine(in, line, lineno)) {
        Fail(source, lineno, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
      }
      std::istringstream es(line);
      long long i = 0, j = 0;
      if (!(es >> i >> j)) Fail(source, lineno, "malformed entry indices");
      if (i < 1 || i > rows || j < 1 || j > cols) Fail(source, lineno, "entry index out of range");
      if (h.symmetry != Symmetry::kGeneral && j > i) {
        Fail(source, lineno, "symmetric storage expects the lower triangle only");
      }
      if (h.symmetry == Symmetry::kSkew && i == j) Fail(source, lineno, "skew-symmetric diagonal entry");
      add(static_cast<Index>(i - 1), static_cast<Index>(j - 1), ReadValue(es, h.field, source, lineno));
    }
  } else {
    // Column-major, lower triangle only for symmetric storage.
    for (long long j = 0; j < cols; ++j) {
      long long first = 0;
      if (h.symmetry == Symmetry::kSkew) {
        first = j + 1;
      } else if (h.symmetry != Symmetry::kGeneral) {
        first = j;
      }
      for (long long i = first; i < rows; ++i) {
        if (!NextDataLine(in, line, lineno)) Fail(source, lineno, "array data ended early");
        std::istringstream es(line);
        const Complex v = ReadValue(es, h.field, source, lineno);
        if (v != Complex(0.0, 0.0)) add(static_cast<Index>(i), static_cast<Index>(j), v);
      }
    }
  }
  if (NextDataLine(in, line, lineno)) Fail(source, lineno, "unexpected trailing data");

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(entries.size());
  for (const auto& [ij, v] : entries) triplets.emplace_back(ij.first, ij.second, v);
  out.matrix.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  if (duplicates > 0) {
    out.warnings.push_back(source + ": " + std::to_string(duplicates) + " duplicate entries were summed");
  }
  return out;
}

MatrixMarketData ReadMatrixMarket(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return ReadMatrixMarket(in, path.string());
}

Vector ReadMatrixMarketVector(const std::filesystem::path& path) {
  const MatrixMarketData data = ReadMatrixMarket(path);
  if (data.matrix.cols() != 1) {
    throw ConfigError(path.string() + ": expected a single column, found " +
                      std::to_string(data.matrix.cols()));
  }
  return Vector(DenseMatrix(data.matrix).col(0));
}

void WriteMatrixMarket(std::ostream& out, const SparseMatrix& m, const std::string& comment) {
  const bool real = AllReal(m);
  out << "%%MatrixMarket matrix coordinate " << (real ? "real" : "complex") << " general\n";
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) out << "% " << line << '\n';
  }
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out << std::setprecision(17) << std::scientific;
  out.imbue(std::locale::classic());
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value().real();
      if (!real) out << ' ' << it.value().imag();
      out << '\n';
    }
  }
  if (!out) throw ConfigError("write failed");
}

void WriteMatrixMarket(const std::filesystem::path& path, const SparseMatrix& m,
                       const std::string& comment) {
  std::ofstream out = OpenForWrite(path);
  WriteMatrixMarket(out, m, comment);
}

void WriteMatrixMarket(const std::filesystem::path& path, const DenseMatrix& m,
                       const std::string& comment) {
  WriteMatrixMarket(path, SparseMatrix(m.sparseView(0.0, 0.0)), comment);
}

void WriteMatrixMarket(const std::filesystem::path& path, const Vector& v, const std::string& comment) {
  WriteMatrixMarket(path, DenseMatrix(v), comment);
}

}  // namespace qoreduce
