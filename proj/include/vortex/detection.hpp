// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "vortex/grid.hpp"
#include "vortex/spdc.hpp"
#include "vortex/spectrum.hpp"

// Measurement chain: SLM ladder masks and their superpositions, single-mode
// fiber projection, bucket and finite-aperture idler detectors, and Poisson
// count sampling.

namespace vortex {

/// One ladder term: shift the OAM by `shift` with complex weight `weight`.
struct MaskTerm {
    int shift = 0;
    cdouble weight = 1.0;
};

/// Superposition of raising/lowering operations applied by an SLM mask.
struct MaskOp {
    std::vector<MaskTerm> terms;
    void validate() const;   // at least one term, distinct shifts
};

struct BucketDetector {};                       // no mode selection: full trace
struct ApertureDetector { double diameter = 0.0; };   // iris before the detector
struct FiberProjection { MaskOp mask; };        // mask + single-mode fiber

using DetectorConfig = std::variant<BucketDetector, ApertureDetector, FiberProjection>;

/// Detection probability for a single ladder mask L_{+m} followed by fiber
/// projection onto l = 0: the photon is detected iff its OAM was -m, so the
/// scan over m reproduces the reduced spectrum.
double mask_shift_detection(const JointAmplitudes& joint, int m);

/// Fraction of the LG_l intensity passing an iris of the given diameter,
/// computed by grid quadrature. Throws ResolutionError when fewer than 8
/// cells span the diameter.
double aperture_efficiency(int ell, double diameter, double waist,
                           const GridSpec& grid);

/// Heralded signal spectrum for a given idler detector. The bucket detector
/// is a full trace (p ~ c^2); an aperture weights each |l| by its
/// transmission; a fiber projection post-selects on the mask.
OamSpectrum heralded_spectrum(const JointAmplitudes& joint,
                              const DetectorConfig& idler, double idler_waist,
                              const GridSpec& grid);

/// Pure heralded state with amplitude per signed l. Populations |a_l|^2 are
/// normalized to 1.
class CoherentState {
public:
    /// Thermally weighted coherent state: a_l = sqrt(exp(-alpha(|l|+1))/Z),
    /// all phases zero, so the populations equal the Gibbs populations.
    /// With literal_weights the amplitudes themselves (not their squares)
    /// are the Gibbs factors, a_l ~ exp(-alpha(|l|+1)); this variant does
    /// NOT have thermal populations.
    static CoherentState thermal(double alpha, int l_max,
                                 bool literal_weights = false);

    /// a_l = c_{|l|}: the state heralded by a thermally weighted ladder mask
    /// on the idler of the given source.
    static CoherentState from_joint(const JointAmplitudes& joint);

    int l_max() const { return l_max_; }
    cdouble a(int ell) const { return a_.at(ell + l_max_); }
    const std::vector<cdouble>& amplitudes() const { return a_; }

    /// Replace the phase of each amplitude (size 2 l_max + 1, radians).
    void set_phases(std::span<const double> phases);

    OamSpectrum populations() const;

private:
    CoherentState(int l_max, std::vector<cdouble> a);

    int l_max_;
    std::vector<cdouble> a_;   // index l + l_max, sum |a|^2 = 1
};

/// Independent Poisson draw per bin with mean expected_total * p(l).
/// Deterministic for a given seed.
std::vector<long long> sample_counts(const OamSpectrum& spectrum,
                                     double expected_total, uint64_t seed);

} // namespace vortex
