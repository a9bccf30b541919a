#ifndef LUNARBEAM_SELECTION_HPP
#define LUNARBEAM_SELECTION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lunarbeam/geometry.hpp"

namespace lunarbeam {

// One row of the selection matrix S: the satellite with minimum line-of-sight
// distance at a time index, with its slant range and incidence angle.
// satellite == 0 means no visible satellite (slant/aoi hold the sentinel).
struct SelectionRecord {
    long time_index = 0;  // 0-based step on the shared grid
    int satellite = 0;    // chosen satellite id, 0 = none
    double slant_range_km = AccessMatrices::not_visible;
    double aoi_rad = AccessMatrices::not_visible;
    int visible_count = 0;

    bool has_selection() const { return satellite != 0; }
};

struct SelectionSeries {
    Epoch start;
    double step_seconds = 60.0;
    std::vector<SelectionRecord> records;

    long size() const { return static_cast<long>(records.size()); }
    long loss_count() const;
};

// Strict-less-than scan of one row: ties resolve to the lowest satellite
// index. visible[m] != 0 marks candidate entries.
SelectionRecord select(std::span<const double> z_row, std::span<const double> psi_row,
                       std::span<const std::uint8_t> visible_mask,
                       std::span<const int> satellite_ids);

// Row-parallel selection over all time indices; the serial variant is the
// reference implementation (bit-identical output).
SelectionSeries select_series(const AccessMatrices& matrices);
SelectionSeries select_series_serial(const AccessMatrices& matrices);

}  // namespace lunarbeam

#endif
