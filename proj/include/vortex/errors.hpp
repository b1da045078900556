// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <stdexcept>
#include <string>

namespace vortex {

/// Base class for physics/numerics failures. Invalid user parameters throw
/// std::invalid_argument instead, so callers can distinguish config mistakes
/// from runtime numerical problems.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two fields/screens defined on different grids were combined.
class GridMismatchError : public Error {
public:
    explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

/// A mode does not fit in the grid window (truncated norm below threshold).
class TruncationError : public Error {
public:
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

/// A feature (e.g. an aperture) is too small for the grid resolution.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& msg) : Error(msg) {}
};

/// A fit could not be performed (degenerate or empty data, no minimum).
class FitError : public Error {
public:
    explicit FitError(const std::string& msg) : Error(msg) {}
};

/// KL divergence requested where the reference has zero support.
class SupportError : public Error {
public:
    explicit SupportError(const std::string& msg) : Error(msg) {}
};

} // namespace vortex
