// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qoreduce/types.hpp"

namespace qoreduce {

/// Reader/writer for the Matrix Market exchange format.
///
/// Reading supports the `coordinate` and `array` layouts with `real`,
/// `complex`, `integer` and `pattern` fields and `general`, `symmetric`,
/// `hermitian` and `skew-symmetric` symmetry. Duplicate coordinate entries are
/// summed and reported through `warnings`.
struct MatrixMarketData {
  SparseMatrix matrix;
  std::vector<std::string> warnings;
};

MatrixMarketData ReadMatrixMarket(std::istream& in, const std::string& source = "<stream>");
MatrixMarketData ReadMatrixMarket(const std::filesystem::path& path);

/// Convenience: reads a matrix and returns it as a dense vector when it has a
/// single column.
Vector ReadMatrixMarketVector(const std::filesystem::path& path);

/// Writes `coordinate general` with 17 significant digits. The field is
/// `real` when every entry has zero imaginary part, `complex` otherwise.
void WriteMatrixMarket(std::ostream& out, const SparseMatrix& m, const std::string& comment = {});
void WriteMatrixMarket(const std::filesystem::path& path, const SparseMatrix& m,
                       const std::string& comment = {});
void WriteMatrixMarket(const std::filesystem::path& path, const DenseMatrix& m,
                       const std::string& comment = {});
void WriteMatrixMarket(const std::filesystem::path& path, const Vector& v,
                       const std::string& comment = {});

}  // namespace qoreduce
