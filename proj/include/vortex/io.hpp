// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vortex/analysis.hpp"
#include "vortex/spdc.hpp"
#include "vortex/spectrum.hpp"
#include "vortex/turbulence.hpp"

// Plain-text output: comma-separated tables with "# key=value" header
// comments, and JSON records for fits and run manifests. All doubles are
// written with "%.17g" so reruns are byte-identical.

namespace vortex::io {

/// Ordered key=value pairs emitted as "# key=value" lines.
class Header {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void set(const std::string& key, uint64_t value);
    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return kv_;
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

std::string format_double(double v);

/// FNV-1a 64-bit hash; used for config hashes so they are stable across
/// builds and platforms.
uint64_t fnv1a64(const std::string& data);

/// Columns: ell,p,err.
void write_spectrum(const std::string& path, const OamSpectrum& spectrum,
                    const Header& header);

/// Columns: ell,count,err (err = sqrt(count), empty bins get 1).
void write_counts(const std::string& path, const std::vector<long long>& counts,
                  int l_max, const Header& header);

/// Columns: ell,c (Schmidt amplitude per |l|).
void write_amplitudes(const std::string& path, const JointAmplitudes& amplitudes,
                      const Header& header);

/// Phase screen as "row col phase" lines.
void write_screen(const std::string& path, const PhaseScreen& screen,
                  const Header& header);

/// Crosstalk matrix as "l_out,l_in,re,im" rows.
void write_crosstalk(const std::string& path, const CrosstalkMatrix& m,
                     const Header& header);

/// ThermalFit as a JSON record (alpha, stderr_alpha, partition, residual,
/// kl_to_fit, window) merged with the header pairs.
void write_fit(const std::string& path, const ThermalFit& fit,
               const Header& header);

/// A parsed numeric table: one value column, optional error column.
struct Table {
    std::vector<int> ell;
    std::vector<double> value;
    std::vector<double> error;               // empty if absent
    std::vector<std::pair<std::string, std::string>> header;
    bool looks_like_counts() const;          // all values nonnegative integers
};

Table read_table(const std::string& path);

/// Convert a table to a spectrum (probabilities normalized; count errors are
/// scaled into probability units).
OamSpectrum table_to_spectrum(const Table& table, bool as_counts);

} // namespace vortex::io
