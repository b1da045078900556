// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/turbulence.hpp"

#include <cmath>
#include <cstring>

#include <fftw3.h>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"
#include "vortex/random.hpp"

namespace vortex {

namespace {

constexpr double kKolmogorovPsd = 0.023;   // phase PSD prefactor, f in cycles/m
constexpr double kPsdExponent = -11.0 / 3.0;

// Mean of f^(-5/3) over the unit cell centered at integer offset (i, j),
// relative to the center value. This is the second-moment-matched variance
// weight: in the tilt regime a sample's contribution to the structure
// function scales with f^2 * PSD, so matching the cell integral of
// f^2 * f^(-11/3) = f^(-5/3) reproduces D(r) where plain point sampling
// undercounts and a plain PSD cell mean diverges.
double cell_weight(int i, int j) {
    constexpr int kSub = 65;
    double acc = 0.0;
    for (int a = 0; a < kSub; ++a) {
        const double x = i + (a + 0.5) / kSub - 0.5;
        for (int b = 0; b < kSub; ++b) {
            const double y = j + (b + 0.5) / kSub - 0.5;
            acc += std::pow(x * x + y * y, -5.0 / 6.0);
        }
    }
    acc /= kSub * kSub;
    return acc / std::pow(static_cast<double>(i * i + j * j), -5.0 / 6.0);
}

double ring_weight(int i, int j) {
    // The 3x3 ring geometry is scale invariant, so the eight weights are
    // shared by every subharmonic level.
    static const double axis = cell_weight(1, 0);
    static const double diag = cell_weight(1, 1);
    return (i == 0 || j == 0) ? axis : diag;
}

// Unnormalized inverse DFT, i.e. sum_k c_k exp(+2 pi i j k / n) per axis.
// FFTW plan creation is not thread-safe; concurrent ensemble evaluation has
// to serialize screen generation or use per-thread plans.
void inverse_fft_2d(std::vector<cdouble>& data, int n) {
    fftw_plan plan = fftw_plan_dft_2d(
        n, n, reinterpret_cast<fftw_complex*>(data.data()),
        reinterpret_cast<fftw_complex*>(data.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

} // namespace

TurbulenceParams TurbulenceParams::from_strength(double strength, double waist,
                                                 const GridSpec& grid,
                                                 uint64_t seed) {
    if (strength < 0.0)
        throw std::invalid_argument("TurbulenceParams: strength must be >= 0");
    if (!(waist > 0.0))
        throw std::invalid_argument("TurbulenceParams: waist must be > 0");
    TurbulenceParams p;
    p.fried_r0 = strength == 0.0 ? std::numeric_limits<double>::infinity()
                                 : 2.0 * waist / strength;
    p.grid = grid;
    p.seed = seed;
    return p;
}

PhaseScreen::PhaseScreen(const TurbulenceParams& params, std::vector<double> phase)
    : params_(params), phase_(std::move(phase)) {
    params_.grid.validate();
    if (phase_.size() != params_.grid.size())
        throw std::invalid_argument("PhaseScreen: phase size does not match grid");
}

PhaseScreen generate_phase_screen(const TurbulenceParams& params) {
    params.grid.validate();
    const int n = params.grid.samples;
    const std::size_t cells = params.grid.size();

    if (!std::isfinite(params.fried_r0)) {
        return PhaseScreen(params, std::vector<double>(cells, 0.0));
    }
    if (!(params.fried_r0 > 0.0))
        throw std::invalid_argument("generate_phase_screen: r0 must be > 0");

    Rng rng(params.seed);
    const double delta = params.grid.cell();
    const double df = 1.0 / (n * delta);
    const double r0_fac = kKolmogorovPsd * std::pow(params.fried_r0, -5.0 / 3.0);

    // White complex noise filtered by sqrt(PSD) * df; bins near the origin
    // get the second-moment cell weights, the piston bin is zeroed.
    std::vector<cdouble> cn(cells);
    for (int ki = 0; ki < n; ++ki) {
        const double fi = (ki <= n / 2 ? ki : ki - n) * df;
        for (int kj = 0; kj < n; ++kj) {
            const double fj = (kj <= n / 2 ? kj : kj - n) * df;
            const std::size_t idx = static_cast<std::size_t>(ki) * n + kj;
            const double g1 = rng.gaussian();
            const double g2 = rng.gaussian();
            if (ki == 0 && kj == 0) {
                cn[idx] = 0.0;
                continue;
            }
            double psd = r0_fac * std::pow(std::hypot(fi, fj), kPsdExponent);
            if (params.subharmonic_levels > 0) {
                const int ii = ki <= n / 2 ? ki : ki - n;
                const int jj = kj <= n / 2 ? kj : kj - n;
                if (ii * ii + jj * jj <= 9) psd *= cell_weight(ii, jj);
            }
            cn[idx] = cdouble(g1, g2) * (std::sqrt(psd) * df);
        }
    }
    inverse_fft_2d(cn, n);

    std::vector<double> phase(cells);
    for (std::size_t i = 0; i < cells; ++i) phase[i] = cn[i].real();

    // Subharmonic levels: 3x3 refinements of the central frequency cell,
    // added as explicit plane waves via separable 1-D phasors.
    for (int level = 1; level <= params.subharmonic_levels; ++level) {
        const double dfp = df / std::pow(3.0, level);
        for (int mi = -1; mi <= 1; ++mi) {
            for (int mj = -1; mj <= 1; ++mj) {
                const double g1 = rng.gaussian();
                const double g2 = rng.gaussian();
                if (mi == 0 && mj == 0) continue;
                const double f = std::hypot(mi * dfp, mj * dfp);
                const double psd =
                    r0_fac * std::pow(f, kPsdExponent) * ring_weight(mi, mj);
                const cdouble amp = cdouble(g1, g2) * (std::sqrt(psd) * dfp);
                std::vector<cdouble> px(n), py(n);
                for (int i = 0; i < n; ++i) {
                    const double x = params.grid.coord(i);
                    px[i] = std::polar(1.0, 2.0 * M_PI * mi * dfp * x);
                    py[i] = std::polar(1.0, 2.0 * M_PI * mj * dfp * x);
                }
                for (int row = 0; row < n; ++row) {
                    const cdouble rowfac = amp * px[row];
                    for (int col = 0; col < n; ++col)
                        phase[static_cast<std::size_t>(row) * n + col] +=
                            (rowfac * py[col]).real();
                }
            }
        }
    }

    // Piston removal; unobservable in mode overlaps.
    double mean = 0.0;
    for (double v : phase) mean += v;
    mean /= static_cast<double>(cells);
    for (double& v : phase) v -= mean;

    return PhaseScreen(params, std::move(phase));
}

CrosstalkMatrix::CrosstalkMatrix(int l_max) : l_max_(l_max) {
    if (l_max < 0)
        throw std::invalid_argument("CrosstalkMatrix: l_max must be >= 0");
    c_.assign(static_cast<std::size_t>(dim()) * dim(), 0.0);
}

double CrosstalkMatrix::column_norm(int l_in) const {
    double acc = 0.0;
    for (int lo = -l_max_; lo <= l_max_; ++lo) acc += std::norm(at(lo, l_in));
    return acc;
}

CrosstalkMatrix CrosstalkMatrix::identity(int l_max) {
    CrosstalkMatrix m(l_max);
    for (int l = -l_max; l <= l_max; ++l) m.at(l, l) = 1.0;
    return m;
}

CrosstalkMatrix crosstalk_matrix(const PhaseScreen& screen, const LgBasis& basis) {
    if (!(screen.grid() == basis.grid()))
        throw GridMismatchError("crosstalk_matrix: screen and basis grids differ");
    const int L = basis.l_max();
    const std::size_t cells = screen.grid().size();

    std::vector<cdouble> phasor(cells);
    const auto& phase = screen.phase();
    for (std::size_t i = 0; i < cells; ++i)
        phasor[i] = std::polar(1.0, phase[i]);

    CrosstalkMatrix m(L);
    for (int l_in = -L; l_in <= L; ++l_in) {
        const TransverseField distorted = basis.modulated(l_in, phasor);
        const std::vector<cdouble> coeff = basis.decompose(distorted);
        for (int l_out = -L; l_out <= L; ++l_out)
            m.at(l_out, l_in) = coeff[l_out + L];
    }
    return m;
}

CrosstalkMatrix crosstalk_matrix(const PhaseScreen& screen, double waist,
                                 int l_max) {
    LgBasis basis(waist, l_max, screen.grid());
    return crosstalk_matrix(screen, basis);
}

OamSpectrum propagate_incoherent(const OamSpectrum& spectrum,
                                 const CrosstalkMatrix& m) {
    const int L = spectrum.l_max();
    if (L != m.l_max())
        throw std::invalid_argument("propagate_incoherent: dimension mismatch");
    std::vector<double> w(2 * L + 1, 0.0);
    for (int lo = -L; lo <= L; ++lo) {
        double acc = 0.0;
        for (int li = -L; li <= L; ++li)
            acc += std::norm(m.at(lo, li)) * spectrum.p(li);
        w[lo + L] = acc;
    }
    return OamSpectrum::from_weights(std::move(w), L);
}

OamSpectrum propagate_coherent(const CoherentState& state,
                               const CrosstalkMatrix& m) {
    const int L = state.l_max();
    if (L != m.l_max())
        throw std::invalid_argument("propagate_coherent: dimension mismatch");
    std::vector<double> w(2 * L + 1, 0.0);
    for (int lo = -L; lo <= L; ++lo) {
        cdouble acc = 0.0;
        for (int li = -L; li <= L; ++li)
            acc += m.at(lo, li) * state.a(li);
        w[lo + L] = std::norm(acc);
    }
    return OamSpectrum::from_weights(std::move(w), L);
}

OamSpectrum ensemble_average(const CoherentState& state,
                             const TurbulenceParams& params, int n_masks,
                             double waist) {
    if (n_masks < 1)
        throw std::invalid_argument("ensemble_average: n_masks must be >= 1");
    const int L = state.l_max();
    LgBasis basis(waist, L, params.grid);
    std::vector<double> mean(2 * L + 1, 0.0);
    for (int mask = 0; mask < n_masks; ++mask) {
        TurbulenceParams p = params;
        p.seed = params.seed + static_cast<uint64_t>(mask);
        const CrosstalkMatrix m = crosstalk_matrix(generate_phase_screen(p), basis);
        const OamSpectrum out = propagate_coherent(state, m);
        for (int l = -L; l <= L; ++l) mean[l + L] += out.p(l);
    }
    return OamSpectrum::from_weights(std::move(mean), L);
}

} // namespace vortex
