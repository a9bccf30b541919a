#ifndef LUNARBEAM_ANALYSIS_HPP
#define LUNARBEAM_ANALYSIS_HPP

#include <vector>

#include "lunarbeam/fso.hpp"
#include "lunarbeam/selection.hpp"

namespace lunarbeam {

// Per-step link metrics for both panel modes, derived from the same selected
// satellite. Fixed-panel quantities are the tracking quantities scaled by
// cos(psi), so the fixed/tracking ratio is bit-exact.
struct MetricRecord {
    long time_index = 0;
    Epoch epoch;
    int satellite = 0;  // 0 = LoS loss
    int visible_count = 0;
    double slant_range_km = 0.0;  // meaningful only when satellite != 0
    double aoi_rad = 0.0;
    double p_r_track_w = 0.0;
    double p_h_track_w = 0.0;
    double zeta_track_pct = 0.0;
    double p_r_fixed_w = 0.0;
    double p_h_fixed_w = 0.0;
    double zeta_fixed_pct = 0.0;

    bool connected() const { return satellite != 0; }
};

struct MetricSeries {
    Epoch start;
    double step_seconds = 60.0;
    LaserConfig laser;
    PanelConfig panel;
    std::vector<MetricRecord> records;

    long size() const { return static_cast<long>(records.size()); }
};

MetricSeries compute_series(const SelectionSeries& selection, const LaserConfig& laser,
                            const PanelConfig& panel);
MetricSeries compute_series_serial(const SelectionSeries& selection, const LaserConfig& laser,
                                   const PanelConfig& panel);

// Maximal run of consecutive steps with a condition (per-satellite visibility,
// selected-satellite dwell, or LoS gap). Duration counts covered steps:
// (last - first + 1) * step.
struct Interval {
    int satellite = 0;  // 0 for gaps
    long start_index = 0;
    long end_index = 0;  // inclusive
    Epoch start_epoch;
    Epoch end_epoch;
    double duration_minutes = 0.0;
};

struct IntervalReport {
    std::vector<Interval> per_satellite;       // maximal visible runs, by satellite then time
    std::vector<Interval> selected_segments;   // dwell segments of the selected satellite
    std::vector<Interval> gaps;                // LoS-loss runs
    long handover_count = 0;  // selected-satellite changes between consecutive connected steps
};

IntervalReport interval_report(const AccessMatrices& matrices, const SelectionSeries& selection);

// Horizon averages and counts. Averages divide by the full index count N
// (LoS-loss rows contribute zeros).
struct SummaryReport {
    long n_steps = 0;
    double avg_harvested_tracking_w = 0.0;
    double avg_harvested_fixed_w = 0.0;
    double avg_efficiency_tracking_pct = 0.0;
    double avg_efficiency_fixed_pct = 0.0;
    long accessible_count = 0;
    double access_rate_pct = 0.0;
    long los_loss_minutes = 0;
    long handover_count = 0;
    double min_efficiency_tracking_connected_pct = 0.0;
    double max_efficiency_tracking_pct = 0.0;
    double min_efficiency_fixed_connected_pct = 0.0;
    double max_efficiency_fixed_pct = 0.0;
    std::vector<Interval> per_satellite_intervals;
};

SummaryReport average_metrics(const MetricSeries& series);
SummaryReport average_metrics(const MetricSeries& series, const IntervalReport& intervals);

// Accessible-index count and access rate (percent of steps with at least one
// visible satellite).
std::pair<long, double> access_report(const AccessMatrices& matrices);

}  // namespace lunarbeam

#endif
