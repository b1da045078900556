// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/spdc.hpp"

#include <cmath>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"

namespace vortex {

namespace {

// Normalize so c_0^2 + 2 sum_{l>=1} c_l^2 = 1 (the signed-state norm).
void normalize_amplitudes(std::vector<double>& c) {
    double total = c[0] * c[0];
    for (std::size_t l = 1; l < c.size(); ++l) total += 2.0 * c[l] * c[l];
    if (!(total > 0.0))
        throw std::invalid_argument("JointAmplitudes: all amplitudes vanish");
    const double inv = 1.0 / std::sqrt(total);
    for (double& v : c) v *= inv;
}

} // namespace

JointAmplitudes::JointAmplitudes(std::vector<double> c) : c_(std::move(c)) {
    if (c_.empty())
        throw std::invalid_argument("JointAmplitudes: need at least l = 0");
    for (double v : c_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("JointAmplitudes: amplitudes must be finite and >= 0");
    normalize_amplitudes(c_);
}

JointAmplitudes JointAmplitudes::thermal(double alpha, int l_max) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("JointAmplitudes::thermal: alpha must be > 0");
    if (l_max < 1)
        throw std::invalid_argument("JointAmplitudes::thermal: l_max must be >= 1");
    std::vector<double> c(l_max + 1);
    // Unnormalized sqrt-Gibbs weights; the common factor exp(-alpha/2)
    // cancels in the normalization.
    for (int l = 0; l <= l_max; ++l) c[l] = std::exp(-0.5 * alpha * l);
    return JointAmplitudes(std::move(c));
}

JointAmplitudes JointAmplitudes::from_pump_overlap(double pump_waist,
                                                   double collection_waist,
                                                   int l_max,
                                                   const GridSpec& grid) {
    if (!(pump_waist > 0.0) || !(collection_waist > 0.0))
        throw std::invalid_argument("from_pump_overlap: waists must be > 0");
    if (l_max < 1)
        throw std::invalid_argument("from_pump_overlap: l_max must be >= 1");
    grid.validate();

    // C_l ~ integral E_p(r) u_l(r) u_{-l}(r) d^2r. The azimuthal phases
    // cancel, leaving a real radial integrand
    //   E_p(r) * |R_l(r)|^2  with  |R_l|^2 = (2/(pi l! w_c^2)) rho^l e^{-2r^2/w_c^2},
    //   rho = 2 r^2 / w_c^2,
    // evaluated by midpoint quadrature. |R_{l+1}|^2 = |R_l|^2 * rho/(l+1)
    // turns the whole stack into one multiply per cell and order.
    const int n = grid.samples;
    const std::size_t cells = grid.size();
    const double wc2 = collection_waist * collection_waist;
    const double wp2 = pump_waist * pump_waist;

    std::vector<double> pump(cells);       // E_p(r), Gaussian (scale irrelevant)
    std::vector<double> intensity(cells);  // |R_l|^2, updated in place
    std::vector<double> rho(cells);        // 2 r^2 / w_c^2
    for (int row = 0; row < n; ++row) {
        const double y = grid.coord(row);
        for (int col = 0; col < n; ++col) {
            const double x = grid.coord(col);
            const double r2 = x * x + y * y;
            const std::size_t i = static_cast<std::size_t>(row) * n + col;
            pump[i] = std::exp(-r2 / wp2);
            intensity[i] = (2.0 / (M_PI * wc2)) * std::exp(-2.0 * r2 / wc2);
            rho[i] = 2.0 * r2 / wc2;
        }
    }

    // Collection-mode truncation check mirrors evaluate_lg: the highest
    // order must still fit the window.
    std::vector<double> c(l_max + 1);
    for (int l = 0; l <= l_max; ++l) {
        if (l > 0) {
            const double inv = 1.0 / l;
            for (std::size_t i = 0; i < cells; ++i)
                intensity[i] *= rho[i] * inv;
        }
        double mode_norm = 0.0;
        for (std::size_t i = 0; i < cells; ++i) mode_norm += intensity[i];
        mode_norm *= grid.cell_area();
        if (mode_norm < 0.999)
            throw TruncationError(
                "from_pump_overlap: grid truncates collection mode l = " + std::to_string(l));
        c[l] = kernels::dot_real(pump, intensity) * grid.cell_area();
    }
    return JointAmplitudes(std::move(c));
}

OamSpectrum JointAmplitudes::reduced_spectrum() const {
    const int L = l_max();
    std::vector<double> w(2 * L + 1);
    for (int l = -L; l <= L; ++l) {
        const double a = c_[std::abs(l)];
        w[l + L] = a * a;
    }
    return OamSpectrum::from_weights(std::move(w), L);
}

double log_linearity_residual(const JointAmplitudes& amplitudes) {
    // Least-squares line through (l, log c_l) over the bins that carry
    // numerically meaningful weight.
    std::vector<double> xs, ys;
    for (int l = 0; l <= amplitudes.l_max(); ++l) {
        const double v = amplitudes.c(l);
        if (v > 1e-14) {
            xs.push_back(l);
            ys.push_back(std::log(v));
        }
    }
    const std::size_t n = xs.size();
    if (n < 3) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i];
        sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (icept + slope * xs[i]);
        ss += r * r;
    }
    return std::sqrt(ss / n);
}

} // namespace vortex
