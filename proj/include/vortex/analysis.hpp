// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <vector>

#include "vortex/spectrum.hpp"

// Statistical layer: the thermal model p(l) = exp(-alpha(|l|+1)) / Z, its
// single-parameter fit, the dimensionless mean energy, and the KL divergence
// between discrete OAM distributions. Energies are in units of hbar*omega
// throughout (k_B = 1).

namespace vortex {

/// Closed-form partition function of the degenerate level structure
/// (every level |l| >= 1 is doubly degenerate):
///   Z = exp(-alpha) (1 + exp(-alpha)) / (1 - exp(-alpha)).
/// Throws std::invalid_argument for alpha <= 0 (the sum diverges).
double partition_function(double alpha);

/// Thermal spectrum over |l| <= l_max, renormalized on that window.
OamSpectrum thermal_pdf(double alpha, int l_max);

/// Result of a thermal fit.
struct ThermalFit {
    double alpha = 0.0;         // fitted inverse temperature
    double stderr_alpha = 0.0;  // from local curvature of the objective
    double partition = 0.0;     // closed-form Z at the fitted alpha
    double residual = 0.0;      // objective-specific residual, see fit docs
    double kl_to_fit = 0.0;     // KL(data || fit), default window
    int window = 0;             // |l| window of the data used
};

/// Weighted least-squares fit of alpha to a probability spectrum. Weights
/// come from the per-bin errors when present (1/err^2), uniform otherwise.
/// residual is the weighted sum of squared residuals at the minimum.
/// Throws FitError for degenerate data (< 3 distinct populated |l| bins).
ThermalFit fit_thermal(const OamSpectrum& data);

/// Poisson maximum-likelihood fit of alpha to raw counts per l (index
/// l + l_max). The total rate is profiled out, so this is the multinomial
/// MLE; stderr comes from the observed information. residual is the Pearson
/// chi-square against the fitted model.
ThermalFit fit_thermal_counts(const std::vector<long long>& counts, int l_max);

/// Average dimensionless energy sum_l p(l) (|l|+1). Equals 1 only for a
/// distribution concentrated at l = 0.
double mean_energy(const OamSpectrum& spectrum);

/// KL divergence D(p_m || p_f) = sum p_m log(p_m / p_f), natural log by
/// default (bits = true switches to log2). Both distributions are truncated
/// and renormalized to |l| <= window first (window < 0 selects the default
/// window of 10, clamped to the inputs). Throws SupportError where p_f = 0
/// but p_m > 0.
double kl_divergence(const OamSpectrum& measured, const OamSpectrum& reference,
                     int window = -1, bool bits = false);

/// Poisson standard error per bin: sqrt(count), with empty bins assigned
/// error 1 so they keep a finite weight.
std::vector<double> poisson_errors(const std::vector<long long>& counts);

/// Total variation distance between two spectra on the same window.
double total_variation(const OamSpectrum& a, const OamSpectrum& b);

} // namespace vortex
