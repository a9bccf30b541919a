#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "lunarbeam/scenario.hpp"

namespace fs = std::filesystem;
using namespace lunarbeam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void apply_dynamics_preset(ScenarioConfig& cfg, const std::string& preset) {
    if (preset.empty()) return;
    if (preset == "kepler") {
        ForceModelConfig fm = cfg.force_model;
        fm.earth_third_body = false;
        fm.sun_third_body = false;
        fm.srp = false;
        fm.albedo = false;
        fm.lunar_j2 = false;
        cfg.force_model = fm;
    } else if (preset == "perturbed") {
        ForceModelConfig fm = cfg.force_model;
        fm.earth_third_body = true;
        fm.sun_third_body = true;
        fm.srp = true;
        fm.albedo = true;
        cfg.force_model = fm;
    }
}

std::string ephem_filename(int satellite_id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ephem_sat%03d.txt", satellite_id);
    return buf;
}

std::vector<Ephemeris> load_ephemeris_dir(const std::string& dir, const ScenarioConfig& cfg) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<Ephemeris> out;
    for (const auto& f : files) {
        out.push_back(
            ingest_ephemeris_file(f.string(), cfg.step_seconds, cfg.start_epoch, cfg.n_steps()));
    }
    std::sort(out.begin(), out.end(),
              [](const Ephemeris& a, const Ephemeris& b) { return a.satellite_id < b.satellite_id; });
    return out;
}

void print_summary(const ScenarioConfig& cfg, const SummaryReport& s, bool compare_paper) {
    std::cout << "scenario " << cfg.name << ": " << cfg.constellation.n_sats << " satellite(s), "
              << cfg.constellation.raan_list_deg.size() << " orbit(s), " << s.n_steps
              << " steps\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "  accessible %ld / %ld (%.2f%%), LoS loss %ld min, handovers %ld\n",
                  s.accessible_count, s.n_steps, s.access_rate_pct, s.los_loss_minutes,
                  s.handover_count);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf),
                  "  tracking: avg P_H %.2f W, avg zeta %.2f%%, max zeta %.2f%%\n",
                  s.avg_harvested_tracking_w, s.avg_efficiency_tracking_pct,
                  s.max_efficiency_tracking_pct);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf),
                  "  fixed:    avg P_H %.2f W, avg zeta %.2f%%, max zeta %.2f%%\n",
                  s.avg_harvested_fixed_w, s.avg_efficiency_fixed_pct,
                  s.max_efficiency_fixed_pct);
    std::cout << buf;
    if (compare_paper) {
        const auto ref = paper_reference(cfg.constellation.n_sats,
                                         static_cast<int>(cfg.constellation.raan_list_deg.size()));
        if (ref) {
            std::snprintf(buf, sizeof(buf),
                          "  reference: accessible %.0f (%.2f%%), avg P_H track %.2f W, "
                          "fixed %.2f W, loss %.0f min\n",
                          ref->accessible, ref->access_rate_pct,
                          ref->avg_harvested_tracking_w, ref->avg_harvested_fixed_w,
                          ref->los_loss_minutes);
            std::cout << buf;
        } else {
            std::cout << "  reference: none published for this configuration\n";
        }
    }
}

int cmd_run(const std::string& config_path, const std::string& outdir,
            const std::string& dynamics, bool compare_paper, const std::string& ephem_dir,
            bool write_ephem, bool serial) {
    ScenarioConfig cfg = load_config(config_path);
    apply_dynamics_preset(cfg, dynamics);
    cfg.validate();
    fs::create_directories(outdir);

    ScenarioResult result;
    if (!ephem_dir.empty()) {
        result = run_scenario(cfg, load_ephemeris_dir(ephem_dir, cfg));
    } else if (serial) {
        result = run_scenario_serial(cfg);
    } else {
        result = run_scenario(cfg);
    }

    write_timeseries_csv(result.series, (fs::path(outdir) / "timeseries.csv").string());
    write_intervals_csv(result.intervals, (fs::path(outdir) / "intervals.csv").string());
    write_summary_json(cfg, result.summary, (fs::path(outdir) / "summary.json").string());
    if (write_ephem) {
        for (const Ephemeris& e : result.ephemerides) {
            write_ephemeris_file(e, (fs::path(outdir) / ephem_filename(e.satellite_id)).string());
        }
    }
    print_summary(cfg, result.summary, compare_paper);
    return kExitOk;
}

int cmd_sweep(const std::string& configdir, const std::string& outdir,
              const std::string& dynamics, bool compare_paper) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(configdir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw ConfigError("sweep: no .json configurations in " + configdir);
    }
    fs::create_directories(outdir);

    std::vector<SweepRow> rows;
    bool any_failed = false;
    for (const auto& f : files) {
        SweepRow row;
        row.config_name = f.stem().string();
        try {
            ScenarioConfig cfg = load_config(f.string());
            apply_dynamics_preset(cfg, dynamics);
            cfg.validate();
            row.n_sats = cfg.constellation.n_sats;
            row.n_orbits = static_cast<int>(cfg.constellation.raan_list_deg.size());
            ScenarioResult result = run_scenario(cfg);
            row.summary = result.summary;
            row.ok = true;

            const fs::path subdir = fs::path(outdir) / row.config_name;
            fs::create_directories(subdir);
            write_timeseries_csv(result.series, (subdir / "timeseries.csv").string());
            write_intervals_csv(result.intervals, (subdir / "intervals.csv").string());
            write_summary_json(cfg, result.summary, (subdir / "summary.json").string());
            print_summary(cfg, result.summary, compare_paper);
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            any_failed = true;
            std::cerr << "sweep: " << row.config_name << " failed: " << e.what() << "\n";
        }
        rows.push_back(std::move(row));
    }
    write_sweep_csv(rows, compare_paper, (fs::path(outdir) / "sweep_summary.csv").string());
    std::cout << "sweep summary written to " << (fs::path(outdir) / "sweep_summary.csv").string()
              << "\n";
    return any_failed ? kExitRuntime : kExitOk;
}

int cmd_access(const std::string& config_path, const std::string& outdir,
               const std::string& dynamics) {
    ScenarioConfig cfg = load_config(config_path);
    apply_dynamics_preset(cfg, dynamics);
    cfg.validate();
    fs::create_directories(outdir);

    const auto ephemerides = propagate_constellation(cfg);
    const AccessMatrices mat =
        build_access_matrices(ephemerides, cfg.rover, cfg.elevation_mask_deg);
    const auto [accessible, rate] = access_report(mat);

    std::ofstream os(fs::path(outdir) / "access.csv");
    if (!os) throw std::runtime_error("cannot open access.csv for writing");
    os << "n,epoch_iso,visible_count,min_slant_km\n";
    char buf[160];
    for (long n = 0; n < mat.n_steps; ++n) {
        double zmin = AccessMatrices::not_visible;
        for (int m = 0; m < mat.n_sats; ++m) zmin = std::min(zmin, mat.z(n, m));
        if (std::isfinite(zmin)) {
            std::snprintf(buf, sizeof(buf), "%ld,%s,%d,%.6f\n", n + 1,
                          epoch_to_iso(mat.epoch_at(n)).c_str(), mat.visible_count(n), zmin);
        } else {
            std::snprintf(buf, sizeof(buf), "%ld,%s,%d,\n", n + 1,
                          epoch_to_iso(mat.epoch_at(n)).c_str(), mat.visible_count(n));
        }
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "accessible %ld / %ld time indices (%.2f%%)\n", accessible,
                  mat.n_steps, rate);
    std::cout << buf;
    return kExitOk;
}

int cmd_ephem_export(const std::string& config_path, const std::string& outdir,
                     const std::string& dynamics) {
    ScenarioConfig cfg = load_config(config_path);
    apply_dynamics_preset(cfg, dynamics);
    cfg.validate();
    fs::create_directories(outdir);
    const auto ephemerides = propagate_constellation(cfg);
    for (const Ephemeris& e : ephemerides) {
        write_ephemeris_file(e, (fs::path(outdir) / ephem_filename(e.satellite_id)).string());
    }
    std::cout << "wrote " << ephemerides.size() << " ephemeris files to " << outdir << "\n";
    return kExitOk;
}

int cmd_ephem_ingest(const std::string& indir, const std::string& outdir,
                     const std::string& config_path) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(indir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("ephem ingest: no .txt files in " + indir);
    fs::create_directories(outdir);

    double step = 60.0;
    Epoch grid_start{0.0};
    long n_steps = 0;
    if (!config_path.empty()) {
        const ScenarioConfig cfg = load_config(config_path);
        step = cfg.step_seconds;
        grid_start = cfg.start_epoch;
        n_steps = cfg.n_steps();
    }
    for (const auto& f : files) {
        const Ephemeris eph = ingest_ephemeris_file(f.string(), step, grid_start, n_steps);
        write_ephemeris_file(eph, (fs::path(outdir) / ephem_filename(eph.satellite_id)).string());
        std::cout << f.filename().string() << ": satellite " << eph.satellite_id << ", "
                  << eph.size() << " samples on the " << step << " s grid\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    const ScenarioConfig cfg = load_config(config_path);
    std::cout << "ok: " << cfg.name << " (" << cfg.constellation.n_sats << " satellites, "
              << cfg.constellation.raan_list_deg.size() << " orbits, " << cfg.n_steps()
              << " steps)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lunarbeam: LLO constellation laser power-beaming simulator"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

    std::string config_path, outdir, dynamics, ephem_dir, configdir, indir;
    bool compare_paper = false;
    bool write_ephem = false;
    bool serial = false;

    auto* run = app.add_subcommand("run", "Run one scenario and write reports");
    run->add_option("-c,--config", config_path, "Scenario JSON")->required();
    run->add_option("-o,--outdir", outdir, "Output directory")->required();
    run->add_option("--dynamics", dynamics, "Force-model preset: kepler|perturbed")
        ->check(CLI::IsMember({"kepler", "perturbed"}));
    run->add_flag("--compare-paper", compare_paper, "Attach published reference values");
    run->add_option("--ephem-dir", ephem_dir, "Use pre-built ephemeris files instead of propagating");
    run->add_flag("--write-ephem", write_ephem, "Also write per-satellite ephemeris files");
    run->add_flag("--serial", serial, "Use the serial reference kernels");

    auto* sweep = app.add_subcommand("sweep", "Run every config in a directory");
    sweep->add_option("-d,--configdir", configdir, "Directory of scenario JSONs")->required();
    sweep->add_option("-o,--outdir", outdir, "Output directory")->required();
    sweep->add_option("--dynamics", dynamics, "Force-model preset: kepler|perturbed")
        ->check(CLI::IsMember({"kepler", "perturbed"}));
    sweep->add_flag("--compare-paper", compare_paper, "Attach published reference values");

    auto* access = app.add_subcommand("access", "Access matrices and rate only");
    access->add_option("-c,--config", config_path, "Scenario JSON")->required();
    access->add_option("-o,--outdir", outdir, "Output directory")->required();
    access->add_option("--dynamics", dynamics, "Force-model preset: kepler|perturbed")
        ->check(CLI::IsMember({"kepler", "perturbed"}));

    auto* ephem = app.add_subcommand("ephem", "Ephemeris file utilities");
    ephem->require_subcommand(1);
    auto* exportc = ephem->add_subcommand("export", "Propagate and write ephemeris files");
    exportc->add_option("-c,--config", config_path, "Scenario JSON")->required();
    exportc->add_option("-o,--outdir", outdir, "Output directory")->required();
    exportc->add_option("--dynamics", dynamics, "Force-model preset: kepler|perturbed")
        ->check(CLI::IsMember({"kepler", "perturbed"}));
    auto* ingestc = ephem->add_subcommand("ingest", "Validate and resample ephemeris files");
    ingestc->add_option("-i,--indir", indir, "Directory of ephemeris .txt files")->required();
    ingestc->add_option("-o,--outdir", outdir, "Output directory")->required();
    ingestc->add_option("-c,--config", config_path, "Resample onto this scenario's grid");

    auto* validate = app.add_subcommand("validate", "Check a scenario configuration");
    validate->add_option("-c,--config", config_path, "Scenario JSON")->required();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (run->parsed()) {
            return cmd_run(config_path, outdir, dynamics, compare_paper, ephem_dir, write_ephem,
                           serial);
        }
        if (sweep->parsed()) return cmd_sweep(configdir, outdir, dynamics, compare_paper);
        if (access->parsed()) return cmd_access(config_path, outdir, dynamics);
        if (ephem->parsed()) {
            if (exportc->parsed()) return cmd_ephem_export(config_path, outdir, dynamics);
            if (ingestc->parsed()) return cmd_ephem_ingest(indir, outdir, config_path);
        }
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
