// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <vector>

#include "vortex/grid.hpp"
#include "vortex/spectrum.hpp"

// Biphoton OAM source. A Gaussian-pumped thin crystal emits signal/idler
// pairs in |+l, -l> with real nonnegative Schmidt amplitudes c_|l| that
// decay exponentially with |l|. Two constructors are provided: a direct
// thermal parameterization c_|l| = sqrt(exp(-alpha(|l|+1)) / Z_trunc), and a
// physical collinear overlap model C_l ~ integral of the pump profile
// against the collection-mode pair LG_l * LG_{-l}.

namespace vortex {

class JointAmplitudes {
public:
    /// Thermal parameterization; c_{l+1}/c_l = exp(-alpha/2) exactly.
    static JointAmplitudes thermal(double alpha, int l_max);

    /// Thin-crystal overlap model with a Gaussian pump of waist pump_waist
    /// and signal/idler collection modes of waist collection_waist.
    static JointAmplitudes from_pump_overlap(double pump_waist,
                                             double collection_waist,
                                             int l_max, const GridSpec& grid);

    int l_max() const { return static_cast<int>(c_.size()) - 1; }

    /// Schmidt amplitude for |l|.
    double c(int abs_ell) const { return c_.at(abs_ell); }
    const std::vector<double>& amplitudes() const { return c_; }

    /// Heralded single-photon spectrum p(l) = c_{|l|}^2 over signed l
    /// (trace over the partner photon).
    OamSpectrum reduced_spectrum() const;

private:
    explicit JointAmplitudes(std::vector<double> c);

    std::vector<double> c_;   // index |l| in [0, l_max], normalized so that
                              // c_0^2 + 2 sum_{l>=1} c_l^2 = 1
};

/// Root-mean-square residual of log c_|l| against its best straight line in
/// |l|; zero means an exactly exponential decay.
double log_linearity_residual(const JointAmplitudes& amplitudes);

} // namespace vortex
