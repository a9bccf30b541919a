#include "lunarbeam/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "json.hpp"

namespace lunarbeam {

using nlohmann::json;

void ScenarioConfig::validate() const {
    if (duration_minutes < 1) {
        throw ConfigError("config: duration_minutes must be at least 1");
    }
    if (!(step_seconds > 0.0)) {
        throw ConfigError("config: step_seconds must be positive");
    }
    const double total = duration_minutes * 60.0;
    if (std::abs(total / step_seconds - std::round(total / step_seconds)) > 1e-9) {
        throw ConfigError("config: duration_minutes * 60 must be divisible by step_seconds");
    }
    try {
        constellation.validate();
        laser.validate();
        panel.validate();
        force_model.validate();
        surface_point(rover.lat_deg, rover.lon_deg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(elevation_mask_deg >= -90.0 && elevation_mask_deg <= 90.0)) {
        throw ConfigError("config: elevation_mask_deg must be in [-90, 90]");
    }
}

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("config: unknown key '" + where + item.key() + "'");
        }
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + key + "': " + e.what());
    }
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text, const std::string& name_hint) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    require_keys(j, "", {"name", "start_epoch", "duration_minutes", "step_seconds",
                         "constellation", "rover", "laser", "panel", "force_model",
                         "elevation_mask_deg"});

    ScenarioConfig cfg;
    cfg.name = get_or<std::string>(j, "name", name_hint);
    if (j.contains("start_epoch")) {
        const auto iso = j.at("start_epoch").get<std::string>();
        const auto epoch = epoch_from_iso(iso);
        if (!epoch) throw ConfigError("config: malformed start_epoch '" + iso + "'");
        cfg.start_epoch = *epoch;
    }
    cfg.duration_minutes = get_or<long>(j, "duration_minutes", cfg.duration_minutes);
    cfg.step_seconds = get_or<double>(j, "step_seconds", cfg.step_seconds);

    if (!j.contains("constellation")) throw ConfigError("config: missing 'constellation'");
    {
        const json& c = j.at("constellation");
        require_keys(c, "constellation.",
                     {"n_sats", "ta_start_deg", "ta_step_deg", "raan_list_deg",
                      "semi_major_axis_km", "eccentricity", "inclination_deg", "argp_deg"});
        ConstellationSpec& spec = cfg.constellation;
        spec.n_sats = get_or<int>(c, "n_sats", 0);
        spec.ta_start_deg = get_or<double>(c, "ta_start_deg", 0.0);
        spec.ta_step_deg = get_or<double>(c, "ta_step_deg", 0.0);
        spec.raan_list_deg = get_or<std::vector<double>>(c, "raan_list_deg", {0.0});
        spec.a = get_or<double>(c, "semi_major_axis_km", 1837.4);
        spec.e = get_or<double>(c, "eccentricity", 0.0);
        spec.inc_deg = get_or<double>(c, "inclination_deg", 90.0);
        spec.argp_deg = get_or<double>(c, "argp_deg", 0.0);
        spec.epoch = cfg.start_epoch;
    }
    if (j.contains("rover")) {
        const json& r = j.at("rover");
        require_keys(r, "rover.", {"lat_deg", "lon_deg"});
        cfg.rover.lat_deg = get_or<double>(r, "lat_deg", -90.0);
        cfg.rover.lon_deg = get_or<double>(r, "lon_deg", 0.0);
    }
    if (j.contains("laser")) {
        const json& l = j.at("laser");
        require_keys(l, "laser.",
                     {"input_power_w", "wavelength_m", "eta_t", "aperture_diameter_m"});
        cfg.laser.input_power_w = get_or<double>(l, "input_power_w", cfg.laser.input_power_w);
        cfg.laser.wavelength_m = get_or<double>(l, "wavelength_m", cfg.laser.wavelength_m);
        cfg.laser.eta_t = get_or<double>(l, "eta_t", cfg.laser.eta_t);
        cfg.laser.aperture_diameter_m =
            get_or<double>(l, "aperture_diameter_m", cfg.laser.aperture_diameter_m);
    }
    if (j.contains("panel")) {
        const json& p = j.at("panel");
        require_keys(p, "panel.", {"diameter_m", "eta_r", "misalignment_loss"});
        cfg.panel.diameter_m = get_or<double>(p, "diameter_m", cfg.panel.diameter_m);
        cfg.panel.eta_r = get_or<double>(p, "eta_r", cfg.panel.eta_r);
        cfg.panel.misalignment_loss =
            get_or<double>(p, "misalignment_loss", cfg.panel.misalignment_loss);
    }
    if (j.contains("force_model")) {
        const json& f = j.at("force_model");
        require_keys(f, "force_model.",
                     {"earth_third_body", "sun_third_body", "srp", "srp_cr", "srp_area_m2",
                      "sat_mass_kg", "lunar_j2", "albedo", "albedo_coeff"});
        ForceModelConfig& fm = cfg.force_model;
        fm.earth_third_body = get_or<bool>(f, "earth_third_body", fm.earth_third_body);
        fm.sun_third_body = get_or<bool>(f, "sun_third_body", fm.sun_third_body);
        fm.srp = get_or<bool>(f, "srp", fm.srp);
        fm.srp_cr = get_or<double>(f, "srp_cr", fm.srp_cr);
        fm.srp_area_m2 = get_or<double>(f, "srp_area_m2", fm.srp_area_m2);
        fm.sat_mass_kg = get_or<double>(f, "sat_mass_kg", fm.sat_mass_kg);
        fm.lunar_j2 = get_or<bool>(f, "lunar_j2", fm.lunar_j2);
        fm.albedo = get_or<bool>(f, "albedo", fm.albedo);
        fm.albedo_coeff = get_or<double>(f, "albedo_coeff", fm.albedo_coeff);
    }
    cfg.elevation_mask_deg = get_or<double>(j, "elevation_mask_deg", 0.0);

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::string hint = path;
    if (const auto slash = hint.find_last_of('/'); slash != std::string::npos) {
        hint = hint.substr(slash + 1);
    }
    if (const auto dot = hint.find_last_of('.'); dot != std::string::npos) {
        hint = hint.substr(0, dot);
    }
    return config_from_json_text(text, hint);
}

namespace {

Ephemeris propagate_one(const ScenarioConfig& cfg,
                        const std::pair<SatelliteId, KeplerianElements>& sat) {
    const StateVector initial = elements_to_state(sat.second);
    const long n = cfg.n_steps();
    Ephemeris eph;
    if (n == 1) {
        eph.satellite_id = sat.first.index;
        eph.step_seconds = cfg.step_seconds;
        eph.samples = {initial};
        return eph;
    }
    const double horizon = static_cast<double>(n - 1) * cfg.step_seconds;
    eph = propagate(initial, cfg.force_model, horizon, cfg.step_seconds);
    eph.satellite_id = sat.first.index;
    return eph;
}

std::vector<Ephemeris> propagate_impl(const ScenarioConfig& cfg, bool parallel) {
    cfg.validate();
    const auto sats = build_constellation(cfg.constellation);
    std::vector<Ephemeris> out(sats.size());
    if (parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(sats.size()); ++i) {
            try {
                out[static_cast<std::size_t>(i)] =
                    propagate_one(cfg, sats[static_cast<std::size_t>(i)]);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < sats.size(); ++i) {
            out[i] = propagate_one(cfg, sats[i]);
        }
    }
    return out;
}

ScenarioResult pipeline(const ScenarioConfig& cfg, std::vector<Ephemeris> ephemerides,
                        bool parallel) {
    ScenarioResult res;
    res.ephemerides = std::move(ephemerides);
    if (parallel) {
        res.matrices =
            build_access_matrices(res.ephemerides, cfg.rover, cfg.elevation_mask_deg);
        res.selection = select_series(res.matrices);
        res.series = compute_series(res.selection, cfg.laser, cfg.panel);
    } else {
        res.matrices =
            build_access_matrices_serial(res.ephemerides, cfg.rover, cfg.elevation_mask_deg);
        res.selection = select_series_serial(res.matrices);
        res.series = compute_series_serial(res.selection, cfg.laser, cfg.panel);
    }
    res.intervals = interval_report(res.matrices, res.selection);
    res.summary = average_metrics(res.series, res.intervals);
    return res;
}

}  // namespace

std::vector<Ephemeris> propagate_constellation(const ScenarioConfig& cfg) {
    return propagate_impl(cfg, true);
}

std::vector<Ephemeris> propagate_constellation_serial(const ScenarioConfig& cfg) {
    return propagate_impl(cfg, false);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    return pipeline(cfg, propagate_constellation(cfg), true);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, std::vector<Ephemeris> ephemerides) {
    cfg.validate();
    if (static_cast<int>(ephemerides.size()) != cfg.constellation.n_sats) {
        throw std::runtime_error("run_scenario: expected " +
                                 std::to_string(cfg.constellation.n_sats) +
                                 " ephemerides, got " + std::to_string(ephemerides.size()));
    }
    return pipeline(cfg, std::move(ephemerides), true);
}

ScenarioResult run_scenario_serial(const ScenarioConfig& cfg) {
    return pipeline(cfg, propagate_constellation_serial(cfg), false);
}

// ---------------------------------------------------------------------------
// Artifacts.
// ---------------------------------------------------------------------------

void write_timeseries_csv(const MetricSeries& series, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "n,epoch_iso,selected_sat,visible_count,slant_range_km,aoi_deg,p_r_track_w,"
          "p_h_track_w,zeta_track_pct,p_r_fixed_w,p_h_fixed_w,zeta_fixed_pct\n";
    char buf[512];
    for (const MetricRecord& r : series.records) {
        const std::string iso = epoch_to_iso(r.epoch);
        if (r.connected()) {
            std::snprintf(buf, sizeof(buf),
                          "%ld,%s,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                          r.time_index + 1, iso.c_str(), r.satellite, r.visible_count,
                          r.slant_range_km, rad2deg(r.aoi_rad), r.p_r_track_w, r.p_h_track_w,
                          r.zeta_track_pct, r.p_r_fixed_w, r.p_h_fixed_w, r.zeta_fixed_pct);
        } else {
            std::snprintf(buf, sizeof(buf),
                          "%ld,%s,,%d,,,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.time_index + 1,
                          iso.c_str(), r.visible_count, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        }
        os << buf;
    }
}

void write_intervals_csv(const IntervalReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "kind,satellite,start_n,end_n,start_epoch,end_epoch,duration_min\n";
    char buf[256];
    auto emit = [&](const char* kind, const Interval& iv) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%ld,%ld,%s,%s,%.4f\n", kind, iv.satellite,
                      iv.start_index + 1, iv.end_index + 1, epoch_to_iso(iv.start_epoch).c_str(),
                      epoch_to_iso(iv.end_epoch).c_str(), iv.duration_minutes);
        os << buf;
    };
    for (const Interval& iv : report.per_satellite) emit("visibility", iv);
    for (const Interval& iv : report.selected_segments) emit("selected", iv);
    for (const Interval& iv : report.gaps) emit("gap", iv);
}

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

void write_summary_json(const ScenarioConfig& cfg, const SummaryReport& summary,
                        const std::string& path) {
    json j;
    j["name"] = cfg.name;
    j["n_sats"] = cfg.constellation.n_sats;
    j["n_orbits"] = static_cast<int>(cfg.constellation.raan_list_deg.size());
    j["n_steps"] = summary.n_steps;
    j["accessible_count"] = summary.accessible_count;
    j["access_rate_pct"] = round2(summary.access_rate_pct);
    j["los_loss_minutes"] = summary.los_loss_minutes;
    j["avg_harvested_tracking_w"] = round2(summary.avg_harvested_tracking_w);
    j["avg_harvested_fixed_w"] = round2(summary.avg_harvested_fixed_w);
    j["avg_efficiency_tracking_pct"] = round2(summary.avg_efficiency_tracking_pct);
    j["avg_efficiency_fixed_pct"] = round2(summary.avg_efficiency_fixed_pct);
    j["max_efficiency_tracking_pct"] = round2(summary.max_efficiency_tracking_pct);
    j["max_efficiency_fixed_pct"] = round2(summary.max_efficiency_fixed_pct);
    j["min_efficiency_tracking_connected_pct"] =
        round2(summary.min_efficiency_tracking_connected_pct);
    j["min_efficiency_fixed_connected_pct"] =
        round2(summary.min_efficiency_fixed_connected_pct);
    j["handover_count"] = summary.handover_count;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << j.dump(2) << "\n";
}

std::optional<PaperReference> paper_reference(int n_sats, int n_orbits) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    // Accessible-index tables for the 30- and 40-orbiter configurations plus
    // the 27.3-day average harvested-power comparison.
    if (n_sats == 1 && n_orbits == 1) {
        return PaperReference{4414.0, 11.21, 28.39, 9.68, 2.84, 0.97, 34946.0};
    }
    if (n_sats == 30) {
        switch (n_orbits) {
            case 1: return PaperReference{39327.0, 99.92, nan, nan, nan, nan, 33.0};
            case 2: return PaperReference{38972.0, 99.01, nan, nan, nan, nan, 388.0};
            case 3: return PaperReference{39249.0, 99.72, nan, nan, nan, nan, 111.0};
            case 4: return PaperReference{39087.0, 99.31, 323.26, 183.29, 32.33, 18.33, 273.0};
        }
    }
    if (n_sats == 40) {
        switch (n_orbits) {
            case 1: return PaperReference{39360.0, 100.00, nan, nan, nan, nan, 0.0};
            case 2: return PaperReference{39353.0, 99.98, nan, nan, nan, nan, 7.0};
            case 3: return PaperReference{39360.0, 100.00, nan, nan, nan, nan, 0.0};
            case 4: return PaperReference{39360.0, 100.00, 332.86, 204.43, 33.29, 20.44, 0.0};
        }
    }
    return std::nullopt;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, bool compare_paper,
                     const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "config,n_sats,n_orbits,status,accessible,access_rate_pct,avg_p_h_track_w,"
          "avg_p_h_fixed_w,avg_zeta_track_pct,avg_zeta_fixed_pct,los_loss_min";
    if (compare_paper) {
        os << ",ref_accessible,ref_access_rate_pct,ref_avg_p_h_track_w,ref_avg_p_h_fixed_w,"
              "ref_avg_zeta_track_pct,ref_avg_zeta_fixed_pct,ref_los_loss_min";
    }
    os << "\n";
    char buf[512];
    auto num = [](double v) {
        if (std::isnan(v)) return std::string();
        char b[64];
        std::snprintf(b, sizeof(b), "%.2f", v);
        return std::string(b);
    };
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            os << row.config_name << "," << row.n_sats << "," << row.n_orbits << ",error: "
               << row.error << ",,,,,,,";
            if (compare_paper) os << ",,,,,,,";
            os << "\n";
            continue;
        }
        const SummaryReport& s = row.summary;
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,ok,%ld,%.2f,%.2f,%.2f,%.2f,%.2f,%ld",
                      row.config_name.c_str(), row.n_sats, row.n_orbits, s.accessible_count,
                      s.access_rate_pct, s.avg_harvested_tracking_w, s.avg_harvested_fixed_w,
                      s.avg_efficiency_tracking_pct, s.avg_efficiency_fixed_pct,
                      s.los_loss_minutes);
        os << buf;
        if (compare_paper) {
            const auto ref = paper_reference(row.n_sats, row.n_orbits);
            if (ref) {
                os << "," << num(ref->accessible) << "," << num(ref->access_rate_pct) << ","
                   << num(ref->avg_harvested_tracking_w) << ","
                   << num(ref->avg_harvested_fixed_w) << ","
                   << num(ref->avg_efficiency_tracking_pct) << ","
                   << num(ref->avg_efficiency_fixed_pct) << "," << num(ref->los_loss_minutes);
            } else {
                os << ",,,,,,,";
            }
        }
        os << "\n";
    }
}

}  // namespace lunarbeam
