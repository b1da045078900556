// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
//
// vortexsim: heralded single-photon OAM thermal-state simulator.
//
// Subcommands run one experiment each from a JSON config with a mandatory
// seed, writing comma-separated tables and JSON fit records into the config's
// output directory. Reruns of the same config are byte-identical.
//
// Exit codes: 0 success, 2 config error, 3 numerical/physics error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vortex/analysis.hpp"
#include "vortex/detection.hpp"
#include "vortex/errors.hpp"
#include "vortex/io.hpp"
#include "vortex/lg.hpp"
#include "vortex/spdc.hpp"
#include "vortex/turbulence.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vortex;

namespace {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Window extent, in units of the waist, that keeps every LG order up to
// l_max above the 0.999 norm threshold (Gaussian tail bound with margin).
double extent_factor(int l_max) {
    const double m = l_max + 1.0;
    return std::max(8.0, std::sqrt(2.0 * m + 8.0 * std::sqrt(m) + 10.0));
}

struct RunConfig {
    json raw;
    std::string experiment;
    uint64_t seed = 0;
    fs::path output_dir;
    std::string config_hash;

    // source
    std::optional<double> alpha;
    std::optional<double> pump_waist;
    double collection_waist = 0.5e-3;
    int l_max = 20;

    // analysis
    double counts = 1e5;   // expected total; 0 = noiseless
    int window = 10;

    // detector
    std::string detector_kind = "bucket";
    double aperture_diameter = 0.0;
    double idler_waist = 0.5e-3;

    // turbulence
    double strength = 0.5;
    double beam_waist = 0.5e-3;
    int masks = 1;
    int subharmonic_levels = 8;

    // sweeps
    std::vector<double> pump_waists;
    std::vector<std::optional<double>> diameters;   // nullopt = open

    // grid (optional override)
    std::optional<int> grid_samples;
    std::optional<double> grid_extent;

    GridSpec grid_for(double waist, int orders) const {
        GridSpec g;
        g.samples = grid_samples.value_or(512);
        g.extent = grid_extent.value_or(waist * extent_factor(orders));
        return g;
    }
};

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    cfg.raw = j;
    try {
        if (!j.contains("experiment"))
            throw ConfigError("config: missing \"experiment\"");
        cfg.experiment = j.at("experiment").get<std::string>();
        if (!j.contains("seed"))
            throw ConfigError("config: missing \"seed\" (mandatory)");
        cfg.seed = j.at("seed").get<uint64_t>();
        cfg.output_dir = j.value("output_dir", std::string("out"));

        if (j.contains("source")) {
            const json& s = j.at("source");
            if (s.contains("alpha")) cfg.alpha = s.at("alpha").get<double>();
            if (s.contains("pump_waist"))
                cfg.pump_waist = s.at("pump_waist").get<double>();
            cfg.collection_waist = s.value("collection_waist", cfg.collection_waist);
            cfg.l_max = s.value("l_max", cfg.l_max);
        }
        cfg.counts = j.value("counts", cfg.counts);
        cfg.window = j.value("window", cfg.window);

        if (j.contains("detector")) {
            const json& d = j.at("detector");
            cfg.detector_kind = d.value("kind", cfg.detector_kind);
            cfg.aperture_diameter = d.value("diameter", cfg.aperture_diameter);
            cfg.idler_waist = d.value("idler_waist", cfg.idler_waist);
        }
        if (j.contains("turbulence")) {
            const json& t = j.at("turbulence");
            cfg.strength = t.value("strength", cfg.strength);
            cfg.beam_waist = t.value("waist", cfg.beam_waist);
            cfg.masks = t.value("masks", cfg.masks);
            cfg.subharmonic_levels = t.value("subharmonic_levels", cfg.subharmonic_levels);
        }
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            if (s.contains("pump_waists"))
                cfg.pump_waists = s.at("pump_waists").get<std::vector<double>>();
            if (s.contains("diameters")) {
                for (const json& d : s.at("diameters")) {
                    if (d.is_string() && d.get<std::string>() == "open")
                        cfg.diameters.push_back(std::nullopt);
                    else
                        cfg.diameters.push_back(d.get<double>());
                }
            }
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            if (g.contains("samples")) cfg.grid_samples = g.at("samples").get<int>();
            if (g.contains("extent")) cfg.grid_extent = g.at("extent").get<double>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }

    cfg.config_hash = [&] {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(io::fnv1a64(j.dump())));
        return std::string(buf);
    }();
    return cfg;
}

io::Header base_header(const RunConfig& cfg) {
    io::Header h;
    h.set("tool", std::string("vortexsim"));
    h.set("experiment", cfg.experiment);
    h.set("config_hash", cfg.config_hash);
    h.set("seed", cfg.seed);
    h.set("window", static_cast<long long>(cfg.window));
    return h;
}

JointAmplitudes build_source(const RunConfig& cfg, int l_max) {
    if (cfg.alpha && cfg.pump_waist)
        throw ConfigError("config: give either source.alpha or source.pump_waist, not both");
    if (cfg.alpha) return JointAmplitudes::thermal(*cfg.alpha, l_max);
    if (cfg.pump_waist) {
        const GridSpec grid = cfg.grid_for(
            std::max(cfg.collection_waist, 0.0), l_max);
        return JointAmplitudes::from_pump_overlap(*cfg.pump_waist,
                                                  cfg.collection_waist, l_max, grid);
    }
    throw ConfigError("config: source needs alpha or pump_waist");
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "vortexsim";
    m["experiment"] = cfg.experiment;
    m["config"] = cfg.raw;
    m["config_hash"] = cfg.config_hash;
    m["seed"] = cfg.seed;
    m["window"] = cfg.window;
    m["outputs"] = outputs;
    std::ofstream out(cfg.output_dir / "manifest.json");
    if (!out) throw Error("cannot write manifest");
    out << m.dump(2) << "\n";
}

// Sample-or-passthrough: with a counts budget, draw Poisson counts and fit by
// maximum likelihood; otherwise fit the exact probabilities. file_ordinal
// derives the sampling seed so every sampled table in a run is independent.
struct FittedSpectrum {
    OamSpectrum spectrum;          // probabilities (empirical when sampled)
    std::vector<long long> counts; // empty in noiseless mode
    ThermalFit fit;
};

FittedSpectrum realize(const RunConfig& cfg, const OamSpectrum& exact,
                       int file_ordinal) {
    if (cfg.counts > 0.0) {
        const uint64_t sample_seed =
            cfg.seed + 1000000ULL + static_cast<uint64_t>(file_ordinal);
        std::vector<long long> counts =
            sample_counts(exact, cfg.counts, sample_seed);
        ThermalFit fit = fit_thermal_counts(counts, exact.l_max());
        OamSpectrum empirical = OamSpectrum::from_counts(counts, exact.l_max());
        return {std::move(empirical), std::move(counts), fit};
    }
    return {exact, {}, fit_thermal(exact)};
}

void emit(const RunConfig& cfg, const FittedSpectrum& r,
          const std::string& stem, io::Header h,
          std::vector<std::string>& outputs) {
    h.set("mean_energy_data", mean_energy(r.spectrum));
    if (!r.counts.empty()) {
        const std::string name = stem + "_counts.csv";
        io::write_counts((cfg.output_dir / name).string(), r.counts,
                         r.spectrum.l_max(), h);
        outputs.push_back(name);
    } else {
        const std::string name = stem + ".csv";
        io::write_spectrum((cfg.output_dir / name).string(), r.spectrum, h);
        outputs.push_back(name);
    }
    const std::string fit_name = stem + "_fit.json";
    io::write_fit((cfg.output_dir / fit_name).string(), r.fit, h);
    outputs.push_back(fit_name);
}

// ---------------------------------------------------------------------------
// Experiments

int run_spectrum(const RunConfig& cfg) {
    const JointAmplitudes joint = build_source(cfg, cfg.l_max);

    OamSpectrum heralded = [&] {
        if (cfg.detector_kind == "bucket")
            return joint.reduced_spectrum();
        if (cfg.detector_kind == "aperture") {
            if (!(cfg.aperture_diameter > 0.0))
                throw ConfigError("config: aperture detector needs diameter > 0");
            const GridSpec grid = cfg.grid_for(cfg.idler_waist, cfg.window);
            return heralded_spectrum(joint,
                                     ApertureDetector{cfg.aperture_diameter},
                                     cfg.idler_waist, grid);
        }
        throw ConfigError("config: unknown detector kind " + cfg.detector_kind);
    }();

    const int w = std::min(cfg.window, heralded.l_max());
    const FittedSpectrum r = realize(cfg, heralded.truncated(w), 0);

    fs::create_directories(cfg.output_dir);
    std::vector<std::string> outputs;
    io::Header h = base_header(cfg);
    emit(cfg, r, "spectrum", h, outputs);
    io::write_amplitudes((cfg.output_dir / "amplitudes.csv").string(), joint, h);
    outputs.push_back("amplitudes.csv");
    write_manifest(cfg, outputs);

    std::cout << "alpha=" << io::format_double(r.fit.alpha)
              << " stderr=" << io::format_double(r.fit.stderr_alpha)
              << " mean_energy=" << io::format_double(mean_energy(r.spectrum))
              << " kl_to_fit=" << io::format_double(r.fit.kl_to_fit) << "\n";
    return 0;
}

int run_pump_sweep(const RunConfig& cfg) {
    if (cfg.pump_waists.size() < 2)
        throw ConfigError("config: sweep.pump_waists needs at least 2 values");

    fs::create_directories(cfg.output_dir);
    std::vector<std::string> outputs;
    std::ofstream sweep(cfg.output_dir / "sweep.csv");
    if (!sweep) throw Error("cannot write sweep.csv");
    {
        io::Header h = base_header(cfg);
        for (const auto& [k, v] : h.entries()) sweep << "# " << k << "=" << v << "\n";
    }
    sweep << "pump_waist,alpha,stderr_alpha,mean_energy,kl_to_fit\n";

    for (std::size_t i = 0; i < cfg.pump_waists.size(); ++i) {
        const double wp = cfg.pump_waists[i];
        const GridSpec grid = cfg.grid_for(cfg.collection_waist, cfg.l_max);
        const JointAmplitudes joint = JointAmplitudes::from_pump_overlap(
            wp, cfg.collection_waist, cfg.l_max, grid);
        const int w = std::min(cfg.window, joint.l_max());
        const FittedSpectrum r =
            realize(cfg, joint.reduced_spectrum().truncated(w), static_cast<int>(i));

        char stem[32];
        std::snprintf(stem, sizeof(stem), "point_%02zu", i);
        io::Header h = base_header(cfg);
        h.set("pump_waist", wp);
        h.set("collection_waist", cfg.collection_waist);
        emit(cfg, r, stem, h, outputs);

        sweep << io::format_double(wp) << "," << io::format_double(r.fit.alpha)
              << "," << io::format_double(r.fit.stderr_alpha) << ","
              << io::format_double(mean_energy(r.spectrum)) << ","
              << io::format_double(r.fit.kl_to_fit) << "\n";
    }
    sweep.close();
    outputs.push_back("sweep.csv");
    write_manifest(cfg, outputs);
    return 0;
}

int run_aperture_sweep(const RunConfig& cfg) {
    if (cfg.diameters.empty())
        throw ConfigError("config: sweep.diameters is required");
    const JointAmplitudes joint = build_source(cfg, cfg.l_max);

    fs::create_directories(cfg.output_dir);
    std::vector<std::string> outputs;
    std::ofstream sweep(cfg.output_dir / "sweep.csv");
    if (!sweep) throw Error("cannot write sweep.csv");
    {
        io::Header h = base_header(cfg);
        for (const auto& [k, v] : h.entries()) sweep << "# " << k << "=" << v << "\n";
    }
    sweep << "diameter,alpha,stderr_alpha,mean_energy,kl_to_fit\n";

    const GridSpec grid = cfg.grid_for(cfg.idler_waist, cfg.window);
    for (std::size_t i = 0; i < cfg.diameters.size(); ++i) {
        const auto& d = cfg.diameters[i];
        const OamSpectrum heralded =
            d ? heralded_spectrum(joint, ApertureDetector{*d}, cfg.idler_waist, grid)
              : joint.reduced_spectrum();
        const int w = std::min(cfg.window, heralded.l_max());
        const FittedSpectrum r =
            realize(cfg, heralded.truncated(w), static_cast<int>(i));

        char stem[32];
        std::snprintf(stem, sizeof(stem), "point_%02zu", i);
        io::Header h = base_header(cfg);
        h.set("diameter", d ? io::format_double(*d) : std::string("open"));
        h.set("idler_waist", cfg.idler_waist);
        emit(cfg, r, stem, h, outputs);

        sweep << (d ? io::format_double(*d) : std::string("open")) << ","
              << io::format_double(r.fit.alpha) << ","
              << io::format_double(r.fit.stderr_alpha) << ","
              << io::format_double(mean_energy(r.spectrum)) << ","
              << io::format_double(r.fit.kl_to_fit) << "\n";
    }
    sweep.close();
    outputs.push_back("sweep.csv");
    write_manifest(cfg, outputs);
    return 0;
}

int run_turbulence(const RunConfig& cfg) {
    const bool coherent = cfg.experiment != "turbulence";
    const bool average = cfg.experiment == "ensemble";
    if (average && cfg.masks < 1)
        throw ConfigError("config: ensemble needs turbulence.masks >= 1");

    // Build the source directly at the display window so the channel, the
    // input and the outputs share one basis size.
    const int L = cfg.window;
    const JointAmplitudes joint = build_source(cfg, L);
    const GridSpec grid = cfg.grid_for(cfg.beam_waist, L);
    const TurbulenceParams params = [&] {
        TurbulenceParams p = TurbulenceParams::from_strength(
            cfg.strength, cfg.beam_waist, grid, cfg.seed);
        p.subharmonic_levels = cfg.subharmonic_levels;
        return p;
    }();

    fs::create_directories(cfg.output_dir);
    std::vector<std::string> outputs;
    int ordinal = 0;

    const OamSpectrum before =
        coherent ? CoherentState::from_joint(joint).populations()
                 : joint.reduced_spectrum();
    {
        io::Header h = base_header(cfg);
        h.set("stage", std::string("input"));
        h.set("strength", cfg.strength);
        emit(cfg, realize(cfg, before, ordinal++), "before", h, outputs);
    }

    const LgBasis basis(cfg.beam_waist, L, grid);
    auto emit_after = [&](const OamSpectrum& after, const std::string& stem,
                          uint64_t screen_seed) {
        io::Header h = base_header(cfg);
        h.set("stage", std::string("output"));
        h.set("strength", cfg.strength);
        h.set("screen_seed", screen_seed);
        emit(cfg, realize(cfg, after, ordinal++), stem, h, outputs);
    };

    if (coherent && average) {
        const OamSpectrum after = ensemble_average(
            CoherentState::from_joint(joint), params, cfg.masks, cfg.beam_waist);
        emit_after(after, "after_ensemble", params.seed);
    } else if (coherent) {
        for (int mask = 0; mask < std::max(1, cfg.masks); ++mask) {
            TurbulenceParams p = params;
            p.seed = params.seed + static_cast<uint64_t>(mask);
            const CrosstalkMatrix m = crosstalk_matrix(generate_phase_screen(p), basis);
            char stem[32];
            std::snprintf(stem, sizeof(stem), "after_mask_%02d", mask);
            emit_after(propagate_coherent(CoherentState::from_joint(joint), m),
                       stem, p.seed);
        }
    } else {
        // Incoherent: single mask, or the mean over masks when masks > 1.
        const int n = std::max(1, cfg.masks);
        std::vector<double> mean(2 * L + 1, 0.0);
        for (int mask = 0; mask < n; ++mask) {
            TurbulenceParams p = params;
            p.seed = params.seed + static_cast<uint64_t>(mask);
            const CrosstalkMatrix m = crosstalk_matrix(generate_phase_screen(p), basis);
            const OamSpectrum out = propagate_incoherent(before, m);
            for (int l = -L; l <= L; ++l) mean[l + L] += out.p(l);
        }
        emit_after(OamSpectrum::from_weights(std::move(mean), L), "after",
                   params.seed);
    }

    write_manifest(cfg, outputs);
    return 0;
}

int run_fit(const std::string& table_path, const std::string& kind,
            const std::string& out_path) {
    const io::Table table = io::read_table(table_path);
    const bool as_counts =
        kind == "counts" || (kind == "auto" && table.looks_like_counts());

    ThermalFit fit;
    if (as_counts) {
        int l_max = 0;
        for (int l : table.ell) l_max = std::max(l_max, std::abs(l));
        std::vector<long long> counts(2 * l_max + 1, 0);
        for (std::size_t i = 0; i < table.ell.size(); ++i)
            counts[table.ell[i] + l_max] =
                static_cast<long long>(std::llround(table.value[i]));
        fit = fit_thermal_counts(counts, l_max);
    } else {
        fit = fit_thermal(io::table_to_spectrum(table, false));
    }

    json j;
    j["alpha"] = fit.alpha;
    j["stderr_alpha"] = fit.stderr_alpha;
    j["partition"] = fit.partition;
    j["residual"] = fit.residual;
    j["kl_to_fit"] = fit.kl_to_fit;
    j["window"] = fit.window;
    j["input"] = table_path;
    j["kind"] = as_counts ? "counts" : "probabilities";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_kl(const std::string& path_m, const std::string& path_f, int window,
           bool bits) {
    const io::Table tm = io::read_table(path_m);
    const io::Table tf = io::read_table(path_f);
    const OamSpectrum pm = io::table_to_spectrum(tm, tm.looks_like_counts());
    const OamSpectrum pf = io::table_to_spectrum(tf, tf.looks_like_counts());
    const double d = kl_divergence(pm, pf, window, bits);
    std::cout << io::format_double(d) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OAM vortex thermal-state simulator"};
    app.require_subcommand(1);

    std::string config_path;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON experiment config")
            ->required()
            ->check(CLI::ExistingFile);
    };
    CLI::App* sub_spectrum = app.add_subcommand(
        "spectrum", "Heralded OAM spectrum, counts and thermal fit");
    add_config(sub_spectrum);
    CLI::App* sub_pump = app.add_subcommand(
        "pump-sweep", "Fitted alpha vs pump waist (overlap source)");
    add_config(sub_pump);
    CLI::App* sub_aperture = app.add_subcommand(
        "aperture-sweep", "Fitted alpha vs idler aperture diameter");
    add_config(sub_aperture);
    CLI::App* sub_turb = app.add_subcommand(
        "turbulence", "Thermal or coherent state through Kolmogorov screens");
    add_config(sub_turb);

    std::string fit_table, fit_kind = "auto", fit_out;
    CLI::App* sub_fit = app.add_subcommand("fit", "Re-fit an existing table");
    sub_fit->add_option("table", fit_table, "CSV table (ell,value[,err])")
        ->required()
        ->check(CLI::ExistingFile);
    sub_fit->add_option("--kind", fit_kind, "counts | probs | auto")
        ->check(CLI::IsMember({"counts", "probs", "auto"}));
    sub_fit->add_option("-o,--output", fit_out, "write the fit record here");

    std::string kl_m, kl_f;
    int kl_window = 10;
    bool kl_bits = false;
    CLI::App* sub_kl = app.add_subcommand(
        "kl", "KL divergence D(measured || reference) between two tables");
    sub_kl->add_option("measured", kl_m)->required()->check(CLI::ExistingFile);
    sub_kl->add_option("reference", kl_f)->required()->check(CLI::ExistingFile);
    sub_kl->add_option("--window", kl_window, "truncation window (|l| <= w)");
    sub_kl->add_flag("--bits", kl_bits, "use log2 instead of ln");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_fit->parsed()) return run_fit(fit_table, fit_kind, fit_out);
        if (sub_kl->parsed()) return run_kl(kl_m, kl_f, kl_window, kl_bits);

        RunConfig cfg = load_config(config_path);
        const std::string& sub = app.get_subcommands().front()->get_name();
        if (sub == "spectrum") {
            if (cfg.experiment != "spectrum")
                throw ConfigError("config experiment does not match subcommand");
            return run_spectrum(cfg);
        }
        if (sub == "pump-sweep") {
            if (cfg.experiment != "pump-sweep")
                throw ConfigError("config experiment does not match subcommand");
            return run_pump_sweep(cfg);
        }
        if (sub == "aperture-sweep") {
            if (cfg.experiment != "aperture-sweep")
                throw ConfigError("config experiment does not match subcommand");
            return run_aperture_sweep(cfg);
        }
        if (sub == "turbulence") {
            if (cfg.experiment != "turbulence" &&
                cfg.experiment != "coherent-turbulence" &&
                cfg.experiment != "ensemble")
                throw ConfigError(
                    "config experiment must be turbulence, coherent-turbulence or ensemble");
            return run_turbulence(cfg);
        }
        throw ConfigError("unknown subcommand");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
