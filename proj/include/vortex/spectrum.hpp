// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vortex {

/// Probability distribution over the signed OAM index l in [-l_max, l_max],
/// optionally with a standard error per bin (in probability units). Always
/// stored normalized; constructors accept unnormalized nonnegative weights.
class OamSpectrum {
public:
    static OamSpectrum from_weights(std::vector<double> weights, int l_max);
    static OamSpectrum from_weights(std::vector<double> weights,
                                    std::vector<double> errors, int l_max);
    static OamSpectrum from_counts(const std::vector<long long>& counts, int l_max);

    int l_max() const { return l_max_; }
    std::size_t bins() const { return p_.size(); }

    double p(int ell) const { return p_[index(ell)]; }
    double err(int ell) const { return err_.empty() ? 0.0 : err_[index(ell)]; }
    bool has_errors() const { return !err_.empty(); }

    const std::vector<double>& probabilities() const { return p_; }
    const std::vector<double>& errors() const { return err_; }

    /// Renormalized restriction to |l| <= window.
    OamSpectrum truncated(int window) const;

private:
    OamSpectrum(int l_max, std::vector<double> p, std::vector<double> err)
        : l_max_(l_max), p_(std::move(p)), err_(std::move(err)) {}

    std::size_t index(int ell) const {
        if (ell < -l_max_ || ell > l_max_)
            throw std::out_of_range("OamSpectrum: l outside window");
        return static_cast<std::size_t>(ell + l_max_);
    }

    int l_max_;
    std::vector<double> p_;
    std::vector<double> err_;
};

} // namespace vortex
