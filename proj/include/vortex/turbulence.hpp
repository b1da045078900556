// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "vortex/detection.hpp"
#include "vortex/grid.hpp"
#include "vortex/lg.hpp"
#include "vortex/spectrum.hpp"

// Kolmogorov-statistics phase screens by FFT spectral synthesis, the OAM
// crosstalk they induce on an LG basis, and weak-turbulence channels for
// incoherent spectra and coherent states.
//
// Synthesis filters complex white noise by sqrt of the phase power spectrum
//   PSD(f) = 0.023 r0^(-5/3) f^(-11/3)      (f in cycles/m)
// and takes one real quadrature of the inverse FFT. The f = 0 bin (piston)
// is zeroed. Plain FFT synthesis misses the power below one frequency bin
// and lands far outside the Kolmogorov structure function, so low-frequency
// compensation is on by default: subharmonic_levels 3x3 refinements of the
// central bin, each sample weighted by the second-moment-matched cell
// integral of the PSD (the weighting that preserves structure functions in
// the tilt regime, where point sampling under-counts and plain cell
// averaging over-counts). Set subharmonic_levels = 0 for the raw method.

namespace vortex {

struct TurbulenceParams {
    double fried_r0 = std::numeric_limits<double>::infinity();  // meters
    GridSpec grid;
    uint64_t seed = 0;
    int subharmonic_levels = 8;

    /// Scintillation strength s = D / r0 with D = 2 * waist the beam
    /// diameter; s = 0 means no turbulence (infinite r0).
    static TurbulenceParams from_strength(double strength, double waist,
                                          const GridSpec& grid, uint64_t seed);
};

/// One turbulence realization: phase in radians per grid cell, zero-mean.
class PhaseScreen {
public:
    PhaseScreen(const TurbulenceParams& params, std::vector<double> phase);

    const TurbulenceParams& params() const { return params_; }
    const GridSpec& grid() const { return params_.grid; }
    const std::vector<double>& phase() const { return phase_; }
    double at(int row, int col) const {
        return phase_[static_cast<std::size_t>(row) * params_.grid.samples + col];
    }

private:
    TurbulenceParams params_;
    std::vector<double> phase_;
};

/// Deterministic in (params, seed).
PhaseScreen generate_phase_screen(const TurbulenceParams& params);

/// Mode-coupling matrix c[l_out, l_in] = overlap(LG_l_out, screen * LG_l_in)
/// for signed indices in [-l_max, l_max]. Column norms are <= 1; the deficit
/// is power scattered out of the truncated azimuthal basis (including all
/// radial orders p > 0).
class CrosstalkMatrix {
public:
    CrosstalkMatrix(int l_max);

    int l_max() const { return l_max_; }
    int dim() const { return 2 * l_max_ + 1; }

    cdouble at(int l_out, int l_in) const {
        return c_[idx(l_out, l_in)];
    }
    cdouble& at(int l_out, int l_in) { return c_[idx(l_out, l_in)]; }

    /// sum_{l_out} |c[l_out, l_in]|^2.
    double column_norm(int l_in) const;

    static CrosstalkMatrix identity(int l_max);

private:
    std::size_t idx(int l_out, int l_in) const {
        return static_cast<std::size_t>(l_out + l_max_) * dim() + (l_in + l_max_);
    }

    int l_max_;
    std::vector<cdouble> c_;
};

CrosstalkMatrix crosstalk_matrix(const PhaseScreen& screen, double waist,
                                 int l_max);

/// Same, reusing a prebuilt basis (waist/grid taken from it).
CrosstalkMatrix crosstalk_matrix(const PhaseScreen& screen, const LgBasis& basis);

/// Incoherent channel: p'(l') = sum_l |c[l',l]|^2 p(l), renormalized.
OamSpectrum propagate_incoherent(const OamSpectrum& spectrum,
                                 const CrosstalkMatrix& m);

/// Coherent channel: p'(l') = |sum_l c[l',l] a_l|^2, renormalized. A single
/// screen generally produces an asymmetric spectrum through interference.
OamSpectrum propagate_coherent(const CoherentState& state,
                               const CrosstalkMatrix& m);

/// Mean of propagate_coherent over n_masks independent screens with seeds
/// params.seed + 0 .. n_masks-1. Evaluation order does not affect the result.
OamSpectrum ensemble_average(const CoherentState& state,
                             const TurbulenceParams& params, int n_masks,
                             double waist);

} // namespace vortex
