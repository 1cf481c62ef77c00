// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rmtq {

// Bad parameters or malformed configuration (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Solver non-convergence, quadrature tolerance not met, NaN propagation
// (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures, corrupted checkpoints (CLI exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rmtq
