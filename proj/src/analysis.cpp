#include "lunarbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lunarbeam {

namespace {

MetricRecord compute_record(const SelectionRecord& sel, Epoch epoch, const LaserConfig& laser,
                            const PanelConfig& panel) {
    MetricRecord rec;
    rec.time_index = sel.time_index;
    rec.epoch = epoch;
    rec.satellite = sel.satellite;
    rec.visible_count = sel.visible_count;
    rec.slant_range_km = sel.slant_range_km;
    rec.aoi_rad = sel.aoi_rad;
    if (!sel.has_selection()) {
        return rec;  // LoS loss: no power reception
    }
    const double z_m = sel.slant_range_km * 1000.0;
    rec.p_r_track_w = received_power_tracking(z_m, laser, panel);
    const LinkResult track = harvest(rec.p_r_track_w, laser, panel);
    rec.p_h_track_w = track.harvested_w;
    rec.zeta_track_pct = track.efficiency_pct;
    const double c = incidence_factor(sel.aoi_rad);
    rec.p_r_fixed_w = c * rec.p_r_track_w;
    rec.p_h_fixed_w = c * rec.p_h_track_w;
    rec.zeta_fixed_pct = c * rec.zeta_track_pct;
    return rec;
}

MetricSeries series_impl(const SelectionSeries& selection, const LaserConfig& laser,
                         const PanelConfig& panel, bool parallel) {
    laser.validate();
    panel.validate();
    MetricSeries series;
    series.start = selection.start;
    series.step_seconds = selection.step_seconds;
    series.laser = laser;
    series.panel = panel;
    const long n = selection.size();
    series.records.resize(static_cast<std::size_t>(n));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            const Epoch epoch = selection.start + static_cast<double>(i) * selection.step_seconds;
            series.records[static_cast<std::size_t>(i)] =
                compute_record(selection.records[static_cast<std::size_t>(i)], epoch, laser,
                               panel);
        }
    } else {
        for (long i = 0; i < n; ++i) {
            const Epoch epoch = selection.start + static_cast<double>(i) * selection.step_seconds;
            series.records[static_cast<std::size_t>(i)] =
                compute_record(selection.records[static_cast<std::size_t>(i)], epoch, laser,
                               panel);
        }
    }
    return series;
}

void close_interval(std::vector<Interval>& out, int satellite, long start, long end, Epoch t0,
                    double step) {
    Interval iv;
    iv.satellite = satellite;
    iv.start_index = start;
    iv.end_index = end;
    iv.start_epoch = t0 + static_cast<double>(start) * step;
    iv.end_epoch = t0 + static_cast<double>(end) * step;
    iv.duration_minutes = static_cast<double>(end - start + 1) * step / 60.0;
    out.push_back(iv);
}

}  // namespace

MetricSeries compute_series(const SelectionSeries& selection, const LaserConfig& laser,
                            const PanelConfig& panel) {
    return series_impl(selection, laser, panel, true);
}

MetricSeries compute_series_serial(const SelectionSeries& selection, const LaserConfig& laser,
                                   const PanelConfig& panel) {
    return series_impl(selection, laser, panel, false);
}

IntervalReport interval_report(const AccessMatrices& matrices, const SelectionSeries& selection) {
    if (selection.size() != matrices.n_steps) {
        throw std::invalid_argument("interval_report: selection/matrices length mismatch");
    }
    IntervalReport report;

    // Per-satellite maximal visible runs.
    for (int m = 0; m < matrices.n_sats; ++m) {
        long run_start = -1;
        for (long n = 0; n < matrices.n_steps; ++n) {
            if (matrices.visible(n, m)) {
                if (run_start < 0) run_start = n;
            } else if (run_start >= 0) {
                close_interval(report.per_satellite, matrices.satellite_ids[m], run_start, n - 1,
                               matrices.start, matrices.step_seconds);
                run_start = -1;
            }
        }
        if (run_start >= 0) {
            close_interval(report.per_satellite, matrices.satellite_ids[m], run_start,
                           matrices.n_steps - 1, matrices.start, matrices.step_seconds);
        }
    }

    // Selected-satellite dwell segments and LoS gaps.
    long seg_start = -1;
    int seg_sat = 0;
    long gap_start = -1;
    const auto& recs = selection.records;
    for (long n = 0; n < selection.size(); ++n) {
        const SelectionRecord& r = recs[static_cast<std::size_t>(n)];
        if (r.has_selection()) {
            if (gap_start >= 0) {
                close_interval(report.gaps, 0, gap_start, n - 1, selection.start,
                               selection.step_seconds);
                gap_start = -1;
            }
            if (seg_start >= 0 && r.satellite != seg_sat) {
                close_interval(report.selected_segments, seg_sat, seg_start, n - 1,
                               selection.start, selection.step_seconds);
                seg_start = n;
                seg_sat = r.satellite;
                ++report.handover_count;
            } else if (seg_start < 0) {
                seg_start = n;
                seg_sat = r.satellite;
            }
        } else {
            if (gap_start < 0) gap_start = n;
            if (seg_start >= 0) {
                close_interval(report.selected_segments, seg_sat, seg_start, n - 1,
                               selection.start, selection.step_seconds);
                seg_start = -1;
                seg_sat = 0;
            }
        }
    }
    if (gap_start >= 0) {
        close_interval(report.gaps, 0, gap_start, selection.size() - 1, selection.start,
                       selection.step_seconds);
    }
    if (seg_start >= 0) {
        close_interval(report.selected_segments, seg_sat, seg_start, selection.size() - 1,
                       selection.start, selection.step_seconds);
    }
    return report;
}

SummaryReport average_metrics(const MetricSeries& series) {
    if (series.records.empty()) {
        throw std::invalid_argument("average_metrics: empty series");
    }
    SummaryReport rep;
    rep.n_steps = series.size();
    double sum_pht = 0.0, sum_phf = 0.0, sum_zt = 0.0, sum_zf = 0.0;
    double min_zt = std::numeric_limits<double>::infinity();
    double min_zf = std::numeric_limits<double>::infinity();
    double max_zt = 0.0, max_zf = 0.0;
    int prev_sat = 0;
    // Fixed-order accumulation keeps the averages identical across thread
    // counts.
    for (const MetricRecord& r : series.records) {
        sum_pht += r.p_h_track_w;
        sum_phf += r.p_h_fixed_w;
        sum_zt += r.zeta_track_pct;
        sum_zf += r.zeta_fixed_pct;
        if (r.connected()) {
            ++rep.accessible_count;
            min_zt = std::min(min_zt, r.zeta_track_pct);
            min_zf = std::min(min_zf, r.zeta_fixed_pct);
            max_zt = std::max(max_zt, r.zeta_track_pct);
            max_zf = std::max(max_zf, r.zeta_fixed_pct);
            if (prev_sat != 0 && r.satellite != prev_sat) ++rep.handover_count;
            prev_sat = r.satellite;
        } else {
            prev_sat = 0;
        }
    }
    const double n = static_cast<double>(rep.n_steps);
    rep.avg_harvested_tracking_w = sum_pht / n;
    rep.avg_harvested_fixed_w = sum_phf / n;
    rep.avg_efficiency_tracking_pct = sum_zt / n;
    rep.avg_efficiency_fixed_pct = sum_zf / n;
    rep.access_rate_pct = 100.0 * static_cast<double>(rep.accessible_count) / n;
    rep.los_loss_minutes =
        static_cast<long>((rep.n_steps - rep.accessible_count) * series.step_seconds / 60.0);
    rep.min_efficiency_tracking_connected_pct = rep.accessible_count > 0 ? min_zt : 0.0;
    rep.min_efficiency_fixed_connected_pct = rep.accessible_count > 0 ? min_zf : 0.0;
    rep.max_efficiency_tracking_pct = max_zt;
    rep.max_efficiency_fixed_pct = max_zf;
    return rep;
}

SummaryReport average_metrics(const MetricSeries& series, const IntervalReport& intervals) {
    SummaryReport rep = average_metrics(series);
    rep.per_satellite_intervals = intervals.per_satellite;
    return rep;
}

std::pair<long, double> access_report(const AccessMatrices& matrices) {
    long accessible = 0;
    for (long n = 0; n < matrices.n_steps; ++n) {
        if (matrices.accessible(n)) ++accessible;
    }
    const double rate = matrices.n_steps > 0
                            ? 100.0 * static_cast<double>(accessible) /
                                  static_cast<double>(matrices.n_steps)
                            : 0.0;
    return {accessible, rate};
}

}  // namespace lunarbeam
