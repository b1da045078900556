// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "vortex/errors.hpp"

namespace vortex {

// ---------------------------------------------------------------------------
// OamSpectrum

OamSpectrum OamSpectrum::from_weights(std::vector<double> weights, int l_max) {
    return from_weights(std::move(weights), {}, l_max);
}

OamSpectrum OamSpectrum::from_weights(std::vector<double> weights,
                                      std::vector<double> errors, int l_max) {
    if (l_max < 0)
        throw std::invalid_argument("OamSpectrum: l_max must be >= 0");
    if (weights.size() != static_cast<std::size_t>(2 * l_max + 1))
        throw std::invalid_argument("OamSpectrum: weight vector has wrong length");
    if (!errors.empty() && errors.size() != weights.size())
        throw std::invalid_argument("OamSpectrum: error vector has wrong length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("OamSpectrum: weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("OamSpectrum: all weights are zero");
    for (double& w : weights) w /= total;
    for (double& e : errors) e /= total;
    return OamSpectrum(l_max, std::move(weights), std::move(errors));
}

OamSpectrum OamSpectrum::from_counts(const std::vector<long long>& counts,
                                     int l_max) {
    std::vector<double> w(counts.size()), e(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0)
            throw std::invalid_argument("OamSpectrum: negative count");
        w[i] = static_cast<double>(counts[i]);
        e[i] = counts[i] > 0 ? std::sqrt(static_cast<double>(counts[i])) : 1.0;
    }
    return from_weights(std::move(w), std::move(e), l_max);
}

OamSpectrum OamSpectrum::truncated(int window) const {
    if (window < 0)
        throw std::invalid_argument("OamSpectrum::truncated: window must be >= 0");
    if (window >= l_max_) return *this;
    std::vector<double> w(2 * window + 1);
    std::vector<double> e;
    if (has_errors()) e.resize(w.size());
    for (int l = -window; l <= window; ++l) {
        w[l + window] = p(l);
        if (has_errors()) e[l + window] = err(l);
    }
    return from_weights(std::move(w), std::move(e), window);
}

// ---------------------------------------------------------------------------
// Thermal model

double partition_function(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("partition_function: alpha must be > 0 (sum diverges)");
    const double q = std::exp(-alpha);
    return q * (1.0 + q) / (1.0 - q);
}

OamSpectrum thermal_pdf(double alpha, int l_max) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("thermal_pdf: alpha must be > 0");
    if (l_max < 1)
        throw std::invalid_argument("thermal_pdf: l_max must be >= 1");
    std::vector<double> w(2 * l_max + 1);
    // exp(-alpha(|l|+1)) up to the common factor exp(-alpha), which the
    // normalization removes.
    for (int l = -l_max; l <= l_max; ++l)
        w[l + l_max] = std::exp(-alpha * std::abs(l));
    return OamSpectrum::from_weights(std::move(w), l_max);
}

double mean_energy(const OamSpectrum& spectrum) {
    double acc = 0.0;
    for (int l = -spectrum.l_max(); l <= spectrum.l_max(); ++l)
        acc += spectrum.p(l) * (std::abs(l) + 1.0);
    return acc;
}

double kl_divergence(const OamSpectrum& measured, const OamSpectrum& reference,
                     int window, bool bits) {
    int w = window >= 0 ? window : 10;
    w = std::min({w, measured.l_max(), reference.l_max()});
    const OamSpectrum pm = measured.truncated(w);
    const OamSpectrum pf = reference.truncated(w);
    double acc = 0.0;
    for (int l = -w; l <= w; ++l) {
        const double m = pm.p(l);
        if (m <= 0.0) continue;
        const double f = pf.p(l);
        if (f <= 0.0)
            throw SupportError("kl_divergence: reference has zero support at l = " +
                               std::to_string(l));
        acc += m * std::log(m / f);
    }
    if (bits) acc /= std::log(2.0);
    return acc;
}

std::vector<double> poisson_errors(const std::vector<long long>& counts) {
    std::vector<double> err(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0)
            throw std::invalid_argument("poisson_errors: negative count");
        err[i] = counts[i] > 0 ? std::sqrt(static_cast<double>(counts[i])) : 1.0;
    }
    return err;
}

double total_variation(const OamSpectrum& a, const OamSpectrum& b) {
    if (a.l_max() != b.l_max())
        throw std::invalid_argument("total_variation: windows differ");
    double acc = 0.0;
    for (int l = -a.l_max(); l <= a.l_max(); ++l)
        acc += std::fabs(a.p(l) - b.p(l));
    return 0.5 * acc;
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

// Thermal probabilities over |l| <= L without constructing a spectrum.
void model_probs(double alpha, int l_max, std::vector<double>& out) {
    out.resize(2 * l_max + 1);
    double total = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
        const double v = std::exp(-alpha * std::abs(l));
        out[l + l_max] = v;
        total += v;
    }
    for (double& v : out) v /= total;
}

// Model mean of (|l|+1) over the window.
double model_energy(double alpha, int l_max) {
    double num = 0.0, den = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
        const double v = std::exp(-alpha * std::abs(l));
        num += v * (std::abs(l) + 1.0);
        den += v;
    }
    return num / den;
}

// Model variance of (|l|+1); the observed information per count.
double model_energy_var(double alpha, int l_max) {
    const double e = model_energy(alpha, l_max);
    double acc = 0.0, den = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
        const double v = std::exp(-alpha * std::abs(l));
        const double d = (std::abs(l) + 1.0) - e;
        acc += v * d * d;
        den += v;
    }
    return acc / den;
}

int distinct_populated_orders(const std::vector<double>& values, int l_max) {
    std::set<int> orders;
    for (int l = -l_max; l <= l_max; ++l)
        if (values[l + l_max] > 0.0) orders.insert(std::abs(l));
    return static_cast<int>(orders.size());
}

constexpr double kAlphaLo = 1e-8;
constexpr double kAlphaHi = 80.0;

// Golden-section minimization after a coarse log-spaced scan.
double minimize_alpha(const std::function<double(double)>& objective) {
    constexpr int kScan = 96;
    double best = kAlphaLo, best_val = std::numeric_limits<double>::infinity();
    const double step = std::log(kAlphaHi / kAlphaLo) / (kScan - 1);
    for (int i = 0; i < kScan; ++i) {
        const double a = kAlphaLo * std::exp(step * i);
        const double v = objective(a);
        if (v < best_val) {
            best_val = v;
            best = a;
        }
    }
    double lo = best * std::exp(-step);
    double hi = best * std::exp(step);
    lo = std::max(lo, kAlphaLo);
    hi = std::min(hi, kAlphaHi);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    return 0.5 * (lo + hi);
}

double curvature(const std::function<double(double)>& f, double x) {
    const double h = std::max(1e-6, 1e-4 * x);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

} // namespace

ThermalFit fit_thermal(const OamSpectrum& data) {
    const int L = data.l_max();
    const auto& p = data.probabilities();
    if (distinct_populated_orders(p, L) < 3)
        throw FitError("fit_thermal: need at least 3 distinct populated |l| orders");

    // Weighted least squares; weights from the per-bin errors when all are
    // positive, uniform otherwise.
    std::vector<double> weight(p.size(), 1.0);
    if (data.has_errors()) {
        bool usable = true;
        for (double e : data.errors())
            if (!(e > 0.0)) { usable = false; break; }
        if (usable)
            for (std::size_t i = 0; i < weight.size(); ++i)
                weight[i] = 1.0 / (data.errors()[i] * data.errors()[i]);
    }

    std::vector<double> model;
    auto chi2 = [&](double alpha) {
        model_probs(alpha, L, model);
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double r = p[i] - model[i];
            acc += weight[i] * r * r;
        }
        return acc;
    };

    ThermalFit fit;
    fit.window = L;
    fit.alpha = minimize_alpha(chi2);
    fit.partition = partition_function(fit.alpha);
    fit.residual = chi2(fit.alpha);
    const double curv = curvature(chi2, fit.alpha);
    fit.stderr_alpha = curv > 0.0 ? std::sqrt(2.0 / curv) : 0.0;
    fit.kl_to_fit = kl_divergence(data, thermal_pdf(fit.alpha, L));
    return fit;
}

ThermalFit fit_thermal_counts(const std::vector<long long>& counts, int l_max) {
    if (counts.size() != static_cast<std::size_t>(2 * l_max + 1))
        throw std::invalid_argument("fit_thermal_counts: count vector has wrong length");
    double total = 0.0, energy_sum = 0.0;
    std::vector<double> as_double(counts.size());
    for (int l = -l_max; l <= l_max; ++l) {
        const long long n = counts[l + l_max];
        if (n < 0)
            throw std::invalid_argument("fit_thermal_counts: negative count");
        as_double[l + l_max] = static_cast<double>(n);
        total += static_cast<double>(n);
        energy_sum += static_cast<double>(n) * (std::abs(l) + 1.0);
    }
    if (total <= 0.0)
        throw FitError("fit_thermal_counts: all counts are zero");
    if (distinct_populated_orders(as_double, l_max) < 3)
        throw FitError("fit_thermal_counts: need at least 3 distinct populated |l| orders");

    // Multinomial MLE: the gradient of the negative log-likelihood is
    // total * (model_energy(alpha) - data mean energy); model_energy is
    // strictly decreasing in alpha, so the root is found by bisection.
    const double e_data = energy_sum / total;
    if (e_data >= model_energy(kAlphaLo, l_max))
        throw FitError("fit_thermal_counts: data flatter than any thermal model");
    if (e_data <= model_energy(kAlphaHi, l_max))
        throw FitError("fit_thermal_counts: data colder than any thermal model");

    double lo = kAlphaLo, hi = kAlphaHi;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (model_energy(mid, l_max) > e_data)
            lo = mid;   // model too flat: raise alpha
        else
            hi = mid;
    }

    ThermalFit fit;
    fit.window = l_max;
    fit.alpha = 0.5 * (lo + hi);
    fit.partition = partition_function(fit.alpha);
    // Observed information: total * Var_model(|l|+1).
    const double info = total * model_energy_var(fit.alpha, l_max);
    fit.stderr_alpha = info > 0.0 ? 1.0 / std::sqrt(info) : 0.0;

    // Pearson chi-square against the fitted model, sqrt(n) errors (1 for
    // empty bins).
    std::vector<double> model;
    model_probs(fit.alpha, l_max, model);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expect = total * model[i];
        const double err2 = counts[i] > 0 ? static_cast<double>(counts[i]) : 1.0;
        const double r = static_cast<double>(counts[i]) - expect;
        chi2 += r * r / err2;
    }
    fit.residual = chi2;
    fit.kl_to_fit = kl_divergence(OamSpectrum::from_counts(counts, l_max),
                                  thermal_pdf(fit.alpha, l_max));
    return fit;
}

} // namespace vortex
