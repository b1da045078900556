// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/lg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"

namespace vortex {

double TransverseField::power() const {
    return kernels::sum_abs2(values()) * grid_.cell_area();
}

TransverseField evaluate_lg(LgIndex index, double waist, const GridSpec& grid) {
    grid.validate();
    if (!(waist > 0.0))
        throw std::invalid_argument("evaluate_lg: waist must be > 0");

    const int n = grid.samples;
    const int m = std::abs(index.ell);
    const double inv_w2 = 1.0 / (waist * waist);
    // sqrt(2 / (pi m!)) / w, via lgamma to stay finite for any order
    const double amp0 =
        std::exp(0.5 * (std::log(2.0) - std::log(M_PI) - std::lgamma(m + 1.0))) / waist;

    TransverseField field(grid, waist);
    auto out = field.values();
    for (int row = 0; row < n; ++row) {
        const double y = grid.coord(row);
        for (int col = 0; col < n; ++col) {
            const double x = grid.coord(col);
            const double r2 = x * x + y * y;
            double radial;
            if (m == 0) {
                radial = amp0 * std::exp(-r2 * inv_w2);
            } else if (r2 == 0.0) {
                radial = 0.0;   // vortex core
            } else {
                // (sqrt(2) r / w)^m exp(-r^2/w^2), evaluated in log space
                radial = amp0 * std::exp(0.5 * m * std::log(2.0 * r2 * inv_w2) - r2 * inv_w2);
            }
            const double theta = std::atan2(y, x);
            out[static_cast<std::size_t>(row) * n + col] =
                std::polar(radial, index.ell * theta);
        }
    }

    const double norm = field.power();
    if (norm < 0.999) {
        throw TruncationError("evaluate_lg: grid window truncates LG_" +
                              std::to_string(index.ell) + " (norm " +
                              std::to_string(norm) + " < 0.999); enlarge extent");
    }
    return field;
}

cdouble overlap(const TransverseField& a, const TransverseField& b) {
    if (!(a.grid() == b.grid()))
        throw GridMismatchError("overlap: fields live on different grids");
    return kernels::dot_conj(a.values(), b.values()) * a.grid().cell_area();
}

TransverseField apply_phase(const TransverseField& field,
                            std::span<const double> phase) {
    if (phase.size() != field.grid().size())
        throw GridMismatchError("apply_phase: phase grid does not match field grid");
    TransverseField out(field.grid(), field.waist());
    auto src = field.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = src[i] * std::polar(1.0, phase[i]);
    return out;
}

std::vector<cdouble> azimuthal_decompose(const TransverseField& field,
                                         double waist, int l_max) {
    LgBasis basis(waist, l_max, field.grid());
    return basis.decompose(field);
}

LgBasis::LgBasis(double waist, int l_max, const GridSpec& grid)
    : waist_(waist), l_max_(l_max), grid_(grid) {
    if (l_max < 0)
        throw std::invalid_argument("LgBasis: l_max must be >= 0");
    modes_.reserve(l_max + 1);
    for (int l = 0; l <= l_max; ++l)
        modes_.push_back(evaluate_lg({l}, waist, grid));
}

TransverseField LgBasis::modulated(int ell, std::span<const cdouble> phasor) const {
    if (phasor.size() != grid_.size())
        throw GridMismatchError("LgBasis::modulated: phasor does not match grid");
    const TransverseField& base = modes_[std::abs(ell)];
    TransverseField out(grid_, waist_);
    if (ell >= 0)
        kernels::cmul(base.values(), phasor, out.values());
    else
        kernels::cmul_conj(base.values(), phasor, out.values());
    return out;
}

std::vector<cdouble> LgBasis::decompose(const TransverseField& field) const {
    if (!(field.grid() == grid_))
        throw GridMismatchError("LgBasis::decompose: field grid does not match basis");
    std::vector<cdouble> coeff(2 * l_max_ + 1);
    const double area = grid_.cell_area();
    for (int l = 0; l <= l_max_; ++l) {
        const auto mode = modes_[l].values();
        // overlap(LG_l, f) = sum conj(u_l) f; for -l the conjugate symmetry
        // turns it into a plain product sum.
        coeff[l_max_ + l] = kernels::dot_conj(mode, field.values()) * area;
        if (l > 0)
            coeff[l_max_ - l] = kernels::dot_mul(mode, field.values()) * area;
    }
    return coeff;
}

void write_field_table(const TransverseField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("write_field_table: cannot open " + path);
    const int n = field.grid().samples;
    out << "row,col,re,im\n";
    char line[96];
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const cdouble v = field.at(row, col);
            std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g\n",
                          row, col, v.real(), v.imag());
            out << line;
        }
    }
}

} // namespace vortex
