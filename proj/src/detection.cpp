// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/detection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vortex/errors.hpp"
#include "vortex/random.hpp"

namespace vortex {

void MaskOp::validate() const {
    if (terms.empty())
        throw std::invalid_argument("MaskOp: need at least one term");
    std::set<int> shifts;
    for (const MaskTerm& t : terms) {
        if (!shifts.insert(t.shift).second)
            throw std::invalid_argument("MaskOp: duplicate shift " +
                                        std::to_string(t.shift));
    }
}

double mask_shift_detection(const JointAmplitudes& joint, int m) {
    if (std::abs(m) > joint.l_max())
        throw std::invalid_argument("mask_shift_detection: |m| exceeds l_max");
    // L_{+m} then l = 0 projection picks out the l = -m component; the joint
    // state is normalized, so the probability is c_{|m|}^2 directly.
    const double c = joint.c(std::abs(m));
    return c * c;
}

double aperture_efficiency(int ell, double diameter, double waist,
                           const GridSpec& grid) {
    if (!(diameter > 0.0))
        throw std::invalid_argument("aperture_efficiency: diameter must be > 0");
    if (!(waist > 0.0))
        throw std::invalid_argument("aperture_efficiency: waist must be > 0");
    grid.validate();
    if (diameter < 8.0 * grid.cell())
        throw ResolutionError("aperture_efficiency: fewer than 8 cells across the aperture");

    // Quadrature of |u_l|^2 over r <= d/2. The mode intensity is built with
    // the same normalization as evaluate_lg, so the full-plane integral is 1.
    const int n = grid.samples;
    const int m = std::abs(ell);
    const double inv_w2 = 1.0 / (waist * waist);
    const double norm0 = 2.0 / (M_PI * std::exp(std::lgamma(m + 1.0))) * inv_w2;
    const double r2_max = 0.25 * diameter * diameter;

    double inside = 0.0;
    double total = 0.0;
    for (int row = 0; row < n; ++row) {
        const double y = grid.coord(row);
        for (int col = 0; col < n; ++col) {
            const double x = grid.coord(col);
            const double r2 = x * x + y * y;
            double intensity;
            if (m == 0) {
                intensity = norm0 * std::exp(-2.0 * r2 * inv_w2);
            } else if (r2 == 0.0) {
                intensity = 0.0;
            } else {
                intensity = norm0 * std::exp(m * std::log(2.0 * r2 * inv_w2) -
                                             2.0 * r2 * inv_w2);
            }
            total += intensity;
            if (r2 <= r2_max) inside += intensity;
        }
    }
    total *= grid.cell_area();
    if (total < 0.999)
        throw TruncationError("aperture_efficiency: grid truncates LG_" +
                              std::to_string(ell));
    return inside * grid.cell_area();
}

OamSpectrum heralded_spectrum(const JointAmplitudes& joint,
                              const DetectorConfig& idler, double idler_waist,
                              const GridSpec& grid) {
    const int L = joint.l_max();
    std::vector<double> w(2 * L + 1);

    if (std::holds_alternative<BucketDetector>(idler)) {
        for (int l = -L; l <= L; ++l) {
            const double c = joint.c(std::abs(l));
            w[l + L] = c * c;
        }
    } else if (const auto* ap = std::get_if<ApertureDetector>(&idler)) {
        // The iris acts as an incoherent intensity filter per idler |l|; the
        // heralded signal bin l keeps weight c^2 * eta(|l|).
        std::vector<double> eta(L + 1);
        for (int m = 0; m <= L; ++m)
            eta[m] = aperture_efficiency(m, ap->diameter, idler_waist, grid);
        for (int l = -L; l <= L; ++l) {
            const double c = joint.c(std::abs(l));
            w[l + L] = c * c * eta[std::abs(l)];
        }
    } else {
        const auto& proj = std::get<FiberProjection>(idler);
        proj.mask.validate();
        // Projecting the idler on the masked fiber mode post-selects the
        // signal component l with the weight of the mask term that maps
        // idler OAM -l onto the fiber's l = 0.
        for (const MaskTerm& t : proj.mask.terms) {
            const int l_signal = t.shift;
            if (std::abs(l_signal) > L) continue;
            const double c = joint.c(std::abs(l_signal));
            w[l_signal + L] = c * c * std::norm(t.weight);
        }
    }
    return OamSpectrum::from_weights(std::move(w), L);
}

CoherentState::CoherentState(int l_max, std::vector<cdouble> a)
    : l_max_(l_max), a_(std::move(a)) {
    double total = 0.0;
    for (const cdouble& v : a_) total += std::norm(v);
    if (!(total > 0.0))
        throw std::invalid_argument("CoherentState: zero amplitude vector");
    const double inv = 1.0 / std::sqrt(total);
    for (cdouble& v : a_) v *= inv;
}

CoherentState CoherentState::thermal(double alpha, int l_max,
                                     bool literal_weights) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("CoherentState::thermal: alpha must be > 0");
    if (l_max < 1)
        throw std::invalid_argument("CoherentState::thermal: l_max must be >= 1");
    std::vector<cdouble> a(2 * l_max + 1);
    for (int l = -l_max; l <= l_max; ++l) {
        const double e = alpha * std::abs(l);   // common exp(-alpha) cancels
        a[l + l_max] = literal_weights ? std::exp(-e) : std::exp(-0.5 * e);
    }
    return CoherentState(l_max, std::move(a));
}

CoherentState CoherentState::from_joint(const JointAmplitudes& joint) {
    const int L = joint.l_max();
    std::vector<cdouble> a(2 * L + 1);
    for (int l = -L; l <= L; ++l) a[l + L] = joint.c(std::abs(l));
    return CoherentState(L, std::move(a));
}

void CoherentState::set_phases(std::span<const double> phases) {
    if (phases.size() != a_.size())
        throw std::invalid_argument("CoherentState::set_phases: wrong length");
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] = std::polar(std::abs(a_[i]), phases[i]);
}

OamSpectrum CoherentState::populations() const {
    std::vector<double> w(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) w[i] = std::norm(a_[i]);
    return OamSpectrum::from_weights(std::move(w), l_max_);
}

std::vector<long long> sample_counts(const OamSpectrum& spectrum,
                                     double expected_total, uint64_t seed) {
    if (!(expected_total > 0.0))
        throw std::invalid_argument("sample_counts: expected_total must be > 0");
    Rng rng(seed);
    const int L = spectrum.l_max();
    std::vector<long long> counts(2 * L + 1);
    for (int l = -L; l <= L; ++l)
        counts[l + L] = rng.poisson(expected_total * spectrum.p(l));
    return counts;
}

} // namespace vortex
