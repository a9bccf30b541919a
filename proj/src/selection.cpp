#include "lunarbeam/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace lunarbeam {

long SelectionSeries::loss_count() const {
    long count = 0;
    for (const SelectionRecord& r : records) {
        if (!r.has_selection()) ++count;
    }
    return count;
}

SelectionRecord select(std::span<const double> z_row, std::span<const double> psi_row,
                       std::span<const std::uint8_t> visible_mask,
                       std::span<const int> satellite_ids) {
    if (z_row.size() != psi_row.size() || z_row.size() != visible_mask.size()) {
        throw std::invalid_argument("select: row length mismatch");
    }
    SelectionRecord rec;
    for (std::size_t m = 0; m < z_row.size(); ++m) {
        if (!visible_mask[m]) continue;
        ++rec.visible_count;
        if (z_row[m] < rec.slant_range_km) {
            rec.slant_range_km = z_row[m];
            rec.aoi_rad = psi_row[m];
            rec.satellite = satellite_ids.empty() ? static_cast<int>(m) + 1 : satellite_ids[m];
        }
    }
    return rec;
}

namespace {

SelectionRecord select_row(const AccessMatrices& mat, long n) {
    SelectionRecord rec;
    rec.time_index = n;
    const auto z = mat.z_row(n);
    const auto psi = mat.psi_row(n);
    for (int m = 0; m < mat.n_sats; ++m) {
        if (!std::isfinite(z[m])) continue;
        ++rec.visible_count;
        if (z[m] < rec.slant_range_km) {
            rec.slant_range_km = z[m];
            rec.aoi_rad = psi[m];
            rec.satellite = mat.satellite_ids[m];
        }
    }
    return rec;
}

SelectionSeries series_impl(const AccessMatrices& mat, bool parallel) {
    SelectionSeries series;
    series.start = mat.start;
    series.step_seconds = mat.step_seconds;
    series.records.resize(static_cast<std::size_t>(mat.n_steps));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long n = 0; n < mat.n_steps; ++n) {
            series.records[static_cast<std::size_t>(n)] = select_row(mat, n);
        }
    } else {
        for (long n = 0; n < mat.n_steps; ++n) {
            series.records[static_cast<std::size_t>(n)] = select_row(mat, n);
        }
    }
    return series;
}

}  // namespace

SelectionSeries select_series(const AccessMatrices& matrices) {
    return series_impl(matrices, true);
}

SelectionSeries select_series_serial(const AccessMatrices& matrices) {
    return series_impl(matrices, false);
}

}  // namespace lunarbeam
