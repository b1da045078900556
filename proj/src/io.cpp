// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "vortex/errors.hpp"

namespace vortex::io {

void Header::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : kv_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    kv_.emplace_back(key, value);
}

void Header::set(const std::string& key, double value) {
    set(key, format_double(value));
}

void Header::set(const std::string& key, long long value) {
    set(key, std::to_string(value));
}

void Header::set(const std::string& key, uint64_t value) {
    set(key, std::to_string(value));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("io: cannot open " + path + " for writing");
    return out;
}

void write_header(std::ofstream& out, const Header& header) {
    for (const auto& [k, v] : header.entries()) out << "# " << k << "=" << v << "\n";
}

} // namespace

void write_spectrum(const std::string& path, const OamSpectrum& spectrum,
                    const Header& header) {
    auto out = open_out(path);
    write_header(out, header);
    out << "ell,p,err\n";
    for (int l = -spectrum.l_max(); l <= spectrum.l_max(); ++l)
        out << l << "," << format_double(spectrum.p(l)) << ","
            << format_double(spectrum.err(l)) << "\n";
}

void write_counts(const std::string& path, const std::vector<long long>& counts,
                  int l_max, const Header& header) {
    if (counts.size() != static_cast<std::size_t>(2 * l_max + 1))
        throw std::invalid_argument("write_counts: count vector has wrong length");
    auto out = open_out(path);
    write_header(out, header);
    out << "ell,count,err\n";
    const std::vector<double> err = poisson_errors(counts);
    for (int l = -l_max; l <= l_max; ++l)
        out << l << "," << counts[l + l_max] << ","
            << format_double(err[l + l_max]) << "\n";
}

void write_amplitudes(const std::string& path, const JointAmplitudes& amplitudes,
                      const Header& header) {
    auto out = open_out(path);
    write_header(out, header);
    out << "ell,c\n";
    for (int l = 0; l <= amplitudes.l_max(); ++l)
        out << l << "," << format_double(amplitudes.c(l)) << "\n";
}

void write_screen(const std::string& path, const PhaseScreen& screen,
                  const Header& header) {
    auto out = open_out(path);
    write_header(out, header);
    out << "row,col,phase\n";
    const int n = screen.grid().samples;
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            out << row << "," << col << ","
                << format_double(screen.at(row, col)) << "\n";
}

void write_crosstalk(const std::string& path, const CrosstalkMatrix& m,
                     const Header& header) {
    auto out = open_out(path);
    write_header(out, header);
    out << "l_out,l_in,re,im\n";
    for (int lo = -m.l_max(); lo <= m.l_max(); ++lo)
        for (int li = -m.l_max(); li <= m.l_max(); ++li) {
            const cdouble v = m.at(lo, li);
            out << lo << "," << li << "," << format_double(v.real()) << ","
                << format_double(v.imag()) << "\n";
        }
}

void write_fit(const std::string& path, const ThermalFit& fit,
               const Header& header) {
    nlohmann::json j;
    j["alpha"] = fit.alpha;
    j["stderr_alpha"] = fit.stderr_alpha;
    j["partition"] = fit.partition;
    j["residual"] = fit.residual;
    j["kl_to_fit"] = fit.kl_to_fit;
    j["window"] = fit.window;
    for (const auto& [k, v] : header.entries()) j[k] = v;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

bool Table::looks_like_counts() const {
    bool any_large = false;
    for (double v : value) {
        if (v < 0.0) return false;
        if (std::fabs(v - std::round(v)) > 1e-9) return false;
        if (v > 1.5) any_large = true;
    }
    return any_large;
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io: cannot open " + path);
    Table table;
    std::string line;
    bool saw_columns = false;
    int n_cols = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                while (!key.empty() && key.front() == ' ') key.erase(key.begin());
                table.header.emplace_back(key, line.substr(eq + 1));
            }
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!saw_columns) {
            // Column header row (ell,<value>[,err]).
            saw_columns = true;
            n_cols = static_cast<int>(cells.size());
            if (n_cols < 2)
                throw Error("io: table " + path + " needs at least 2 columns");
            continue;
        }
        if (static_cast<int>(cells.size()) != n_cols)
            throw Error("io: ragged row in " + path);
        table.ell.push_back(std::stoi(cells[0]));
        table.value.push_back(std::stod(cells[1]));
        if (n_cols >= 3) table.error.push_back(std::stod(cells[2]));
    }
    if (table.ell.empty()) throw Error("io: no data rows in " + path);
    return table;
}

OamSpectrum table_to_spectrum(const Table& table, bool as_counts) {
    int l_max = 0;
    for (int l : table.ell) l_max = std::max(l_max, std::abs(l));
    const std::size_t n = static_cast<std::size_t>(2 * l_max + 1);
    if (as_counts) {
        std::vector<long long> counts(n, 0);
        for (std::size_t i = 0; i < table.ell.size(); ++i)
            counts[table.ell[i] + l_max] =
                static_cast<long long>(std::llround(table.value[i]));
        return OamSpectrum::from_counts(counts, l_max);
    }
    std::vector<double> w(n, 0.0), e;
    if (!table.error.empty()) e.assign(n, 0.0);
    for (std::size_t i = 0; i < table.ell.size(); ++i) {
        w[table.ell[i] + l_max] = table.value[i];
        if (!table.error.empty()) e[table.ell[i] + l_max] = table.error[i];
    }
    return OamSpectrum::from_weights(std::move(w), std::move(e), l_max);
}

} // namespace vortex::io
