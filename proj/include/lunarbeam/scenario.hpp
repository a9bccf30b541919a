#ifndef LUNARBEAM_SCENARIO_HPP
#define LUNARBEAM_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "lunarbeam/analysis.hpp"
#include "lunarbeam/dynamics.hpp"
#include "lunarbeam/geometry.hpp"
#include "lunarbeam/orbits.hpp"

namespace lunarbeam {

// Configuration errors (bad file, bad schema, violated invariants). The CLI
// maps these to exit code 2; runtime failures map to 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scenario configuration. Defaults reproduce the reference study's simulation
// parameters (Table-style values: 1837.4 km circular polar orbits, south-pole
// rover, 1 kW / 1064 nm laser, 2 m panel, 27.3-day horizon at 1 min cadence).
// ---------------------------------------------------------------------------
struct ScenarioConfig {
    std::string name;
    Epoch start_epoch;            // default: 2025-01-01T00:00:00
    long duration_minutes = 39360;
    double step_seconds = 60.0;
    ConstellationSpec constellation;
    RoverSite rover;
    LaserConfig laser;
    PanelConfig panel;
    ForceModelConfig force_model;
    double elevation_mask_deg = 0.0;

    long n_steps() const {
        return static_cast<long>(duration_minutes * 60.0 / step_seconds);
    }
    void validate() const;
};

// Strict JSON ingestion: unknown keys are errors. Throws ConfigError.
ScenarioConfig config_from_json_text(const std::string& text, const std::string& name_hint = "");
ScenarioConfig load_config(const std::string& path);

// Per-satellite propagation over the scenario grid. OpenMP-parallel across
// satellites; each propagation is single-threaded, so results are identical
// for any thread count. The serial variant is the reference implementation.
std::vector<Ephemeris> propagate_constellation(const ScenarioConfig& cfg);
std::vector<Ephemeris> propagate_constellation_serial(const ScenarioConfig& cfg);

struct ScenarioResult {
    std::vector<Ephemeris> ephemerides;
    AccessMatrices matrices;
    SelectionSeries selection;
    MetricSeries series;
    IntervalReport intervals;
    SummaryReport summary;
};

// Full pipeline: propagate (or take pre-built ephemerides), build Z and Psi,
// select, compute metrics, summarize.
ScenarioResult run_scenario(const ScenarioConfig& cfg);
ScenarioResult run_scenario(const ScenarioConfig& cfg, std::vector<Ephemeris> ephemerides);
ScenarioResult run_scenario_serial(const ScenarioConfig& cfg);

// ---------------------------------------------------------------------------
// Report artifacts.
// ---------------------------------------------------------------------------
void write_timeseries_csv(const MetricSeries& series, const std::string& path);
void write_intervals_csv(const IntervalReport& report, const std::string& path);
void write_summary_json(const ScenarioConfig& cfg, const SummaryReport& summary,
                        const std::string& path);

// Reference values from the study being reproduced (access tables and the
// 27.3-day average-power comparison), keyed by satellite count and orbit
// count. Entries without published numbers hold NaN.
struct PaperReference {
    double accessible = 0.0;
    double access_rate_pct = 0.0;
    double avg_harvested_tracking_w = 0.0;
    double avg_harvested_fixed_w = 0.0;
    double avg_efficiency_tracking_pct = 0.0;
    double avg_efficiency_fixed_pct = 0.0;
    double los_loss_minutes = 0.0;
};
std::optional<PaperReference> paper_reference(int n_sats, int n_orbits);

struct SweepRow {
    std::string config_name;
    int n_sats = 0;
    int n_orbits = 0;
    bool ok = false;
    std::string error;
    SummaryReport summary;
};

void write_sweep_csv(const std::vector<SweepRow>& rows, bool compare_paper,
                     const std::string& path);

}  // namespace lunarbeam

#endif
