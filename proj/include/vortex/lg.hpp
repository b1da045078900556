// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <span>
#include <vector>

#include "vortex/grid.hpp"

// Laguerre-Gaussian modes with radial index p = 0, evaluated at the beam
// waist plane:
//
//   u_l(r, theta) = sqrt(2 / (pi |l|!)) / w * (sqrt(2) r / w)^|l|
//                   * exp(-r^2 / w^2) * exp(i l theta)
//
// which integrates to unit power over the plane. The azimuthal phase is
// exp(+i l theta) with the global phase real-positive along theta = 0.
// All fields live in one common plane; there is no propagation.

namespace vortex {

struct LgIndex {
    int ell = 0;   // signed OAM index; radial index is always 0
};

/// Evaluate LG_{l,0} with the given waist. Throws TruncationError when the
/// window truncates more than 1e-3 of the mode power (grid norm < 0.999).
TransverseField evaluate_lg(LgIndex index, double waist, const GridSpec& grid);

/// Discrete inner product <a, b> = sum conj(a) * b * cell_area.
/// Conjugate-symmetric: overlap(a, b) == conj(overlap(b, a)).
cdouble overlap(const TransverseField& a, const TransverseField& b);

/// Pointwise multiplication by exp(i * phase). Unitary on the grid.
TransverseField apply_phase(const TransverseField& field,
                            std::span<const double> phase);

/// Project onto the LG basis at the given waist: coefficient[l + l_max] =
/// overlap(LG_l, field) for l in [-l_max, l_max].
std::vector<cdouble> azimuthal_decompose(const TransverseField& field,
                                         double waist, int l_max);

/// Cached LG stack at one waist/grid. Only l >= 0 is stored; negative orders
/// use LG_{-l} = conj(LG_l), which holds because the radial profile is real.
class LgBasis {
public:
    LgBasis(double waist, int l_max, const GridSpec& grid);

    int l_max() const { return l_max_; }
    double waist() const { return waist_; }
    const GridSpec& grid() const { return grid_; }

    /// Stored mode for l >= 0.
    const TransverseField& mode_abs(int abs_ell) const { return modes_[abs_ell]; }

    /// field = LG_l * phasor (pointwise), for signed l.
    TransverseField modulated(int ell, std::span<const cdouble> phasor) const;

    /// overlap(LG_l, field) for every signed l, indexed l + l_max.
    std::vector<cdouble> decompose(const TransverseField& field) const;

private:
    double waist_;
    int l_max_;
    GridSpec grid_;
    std::vector<TransverseField> modes_;
};

/// Plain-text dump of a field as "row col re im" lines, for inspection.
void write_field_table(const TransverseField& field, const std::string& path);

} // namespace vortex
