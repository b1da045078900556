// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace vortex {

using cdouble = std::complex<double>;

/// Square sampling window centered on the optical axis. Coordinates follow
/// the FFT-aligned layout x_i = (i - n/2) * cell, so the axis point r = 0 is
/// an actual grid node.
struct GridSpec {
    int samples = 512;     // per axis, >= 64
    double extent = 0.0;   // full window side, meters

    double cell() const { return extent / samples; }
    double cell_area() const { return cell() * cell(); }
    double coord(int i) const { return (i - samples / 2) * cell(); }
    std::size_t size() const { return static_cast<std::size_t>(samples) * samples; }

    void validate() const {
        if (samples < 64)
            throw std::invalid_argument("GridSpec: samples_per_axis must be >= 64");
        if (!(extent > 0.0))
            throw std::invalid_argument("GridSpec: physical_extent must be > 0");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Complex optical field sampled on a GridSpec, row-major with row = y index
/// and column = x index. The stored waist is the construction parameter and
/// is informational only.
class TransverseField {
public:
    TransverseField(const GridSpec& grid, double waist)
        : grid_(grid), waist_(waist), v_(grid.size()) {
        grid_.validate();
    }

    const GridSpec& grid() const { return grid_; }
    double waist() const { return waist_; }

    std::span<const cdouble> values() const { return v_; }
    std::span<cdouble> values() { return v_; }

    cdouble at(int row, int col) const {
        return v_[static_cast<std::size_t>(row) * grid_.samples + col];
    }
    cdouble& at(int row, int col) {
        return v_[static_cast<std::size_t>(row) * grid_.samples + col];
    }

    /// Integrated intensity, sum |u|^2 * cell_area.
    double power() const;

private:
    GridSpec grid_;
    double waist_;
    std::vector<cdouble> v_;
};

} // namespace vortex
