// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "qoreduce/types.hpp"

namespace qoreduce {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: dimensions, indices, malformed files, bad options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical step failed (singular pencil, empty basis, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The pencil sE - A is singular or too ill-conditioned at `shift`.
class SingularPencilError : public NumericalError {
 public:
  SingularPencilError(Complex shift, const std::string& what);
  Complex shift() const { return shift_; }

 private:
  Complex shift_;
};

/// Raised by the run/verify layer when an interpolation check fails.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Process exit codes of the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kNumericalFailure = 2,
  kVerificationFailure = 3,
};

std::string FormatComplex(Complex z);

}  // namespace qoreduce
