// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace qoreduce::detail {

// Throws ConfigError unless the grid is nonempty and strictly increasing.
void CheckGrid(const std::vector<double>& grid_hz);

}  // namespace qoreduce::detail
