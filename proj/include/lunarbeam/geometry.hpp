#ifndef LUNARBEAM_GEOMETRY_HPP
#define LUNARBEAM_GEOMETRY_HPP

#include <limits>
#include <span>
#include <vector>

#include "lunarbeam/core.hpp"
#include "lunarbeam/dynamics.hpp"

namespace lunarbeam {

enum class PanelMode { tracking, fixed };

// Receiver site on the lunar surface (body-fixed coordinates). In fixed mode
// the panel normal is the outward surface normal for all time; in tracking
// mode the normal follows the boresight of the selected satellite, so the
// angle of incidence is identically zero.
struct RoverSite {
    double lat_deg = -90.0;
    double lon_deg = 0.0;
    PanelMode panel_mode = PanelMode::fixed;
};

struct VisibilityResult {
    bool visible = false;
    double elevation_rad = 0.0;
};

// Line-of-sight test on a spherical Moon: visible iff the elevation of the
// satellite above the site's horizon plane reaches the mask.
VisibilityResult visibility(const Vec3& sat_pos, const Vec3& rover_pos, const Vec3& rover_normal,
                            double mask_deg);

// Angle between the incoming beam and the panel normal,
// psi = arccos(clamp(-b.n)), with b the satellite->rover unit boresight.
double angle_of_incidence(const Vec3& boresight, const Vec3& panel_normal);

// ---------------------------------------------------------------------------
// Per-step, per-satellite slant ranges Z and incidence angles Psi on the
// shared ephemeris grid. Non-visible entries hold +infinity so a running
// minimum skips them naturally.
// ---------------------------------------------------------------------------
struct AccessMatrices {
    long n_steps = 0;
    int n_sats = 0;
    double step_seconds = 60.0;
    Epoch start;
    std::vector<int> satellite_ids;  // column -> satellite id
    std::vector<double> z_km;        // row-major, n_steps x n_sats
    std::vector<double> psi_rad;

    static constexpr double not_visible = std::numeric_limits<double>::infinity();

    double z(long n, int m) const { return z_km[static_cast<std::size_t>(n) * n_sats + m]; }
    double psi(long n, int m) const { return psi_rad[static_cast<std::size_t>(n) * n_sats + m]; }
    bool visible(long n, int m) const { return std::isfinite(z(n, m)); }
    std::span<const double> z_row(long n) const {
        return {z_km.data() + static_cast<std::size_t>(n) * n_sats,
                static_cast<std::size_t>(n_sats)};
    }
    std::span<const double> psi_row(long n) const {
        return {psi_rad.data() + static_cast<std::size_t>(n) * n_sats,
                static_cast<std::size_t>(n_sats)};
    }
    int visible_count(long n) const;
    bool accessible(long n) const { return visible_count(n) > 0; }
    Epoch epoch_at(long n) const { return start + static_cast<double>(n) * step_seconds; }
};

// Build Z and Psi from per-satellite ephemerides sharing one grid. The OpenMP
// kernel parallelises over time rows; the serial variant is the reference
// implementation and produces bit-identical output.
AccessMatrices build_access_matrices(std::span<const Ephemeris> ephemerides, const RoverSite& site,
                                     double mask_deg);
AccessMatrices build_access_matrices_serial(std::span<const Ephemeris> ephemerides,
                                            const RoverSite& site, double mask_deg);

}  // namespace lunarbeam

#endif
