#include "lunarbeam/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace lunarbeam {

VisibilityResult visibility(const Vec3& sat_pos, const Vec3& rover_pos, const Vec3& rover_normal,
                            double mask_deg) {
    const Vec3 d = sat_pos - rover_pos;
    const double sin_el = d.dot(rover_normal) / d.norm();
    const double el = std::asin(std::clamp(sin_el, -1.0, 1.0));
    return {sin_el >= std::sin(deg2rad(mask_deg)), el};
}

double angle_of_incidence(const Vec3& boresight, const Vec3& panel_normal) {
    return std::acos(std::clamp(-boresight.dot(panel_normal), -1.0, 1.0));
}

int AccessMatrices::visible_count(long n) const {
    int count = 0;
    for (int m = 0; m < n_sats; ++m) {
        if (visible(n, m)) ++count;
    }
    return count;
}

namespace {

void fill_row(AccessMatrices& mat, std::span<const Ephemeris> ephemerides,
              const SurfacePoint& site_body, PanelMode mode, double mask_deg, long n) {
    const Epoch epoch = mat.epoch_at(n);
    const Vec3 rover = moon_body_to_inertial(epoch, site_body.position);
    const Vec3 normal = moon_body_to_inertial(epoch, site_body.normal);
    const double sin_mask = std::sin(deg2rad(mask_deg));
    const std::size_t base = static_cast<std::size_t>(n) * mat.n_sats;
    for (int m = 0; m < mat.n_sats; ++m) {
        const Vec3& sat = ephemerides[m].samples[static_cast<std::size_t>(n)].r;
        const Vec3 d = sat - rover;
        const double range = d.norm();
        // One shared scalar drives both elevation and incidence, keeping
        // psi = pi/2 - elevation exact through the asin/acos pair.
        const double sin_el = std::clamp(d.dot(normal) / range, -1.0, 1.0);
        if (sin_el < sin_mask) {
            mat.z_km[base + m] = AccessMatrices::not_visible;
            mat.psi_rad[base + m] = AccessMatrices::not_visible;
            continue;
        }
        mat.z_km[base + m] = range;
        mat.psi_rad[base + m] = mode == PanelMode::tracking ? 0.0 : std::acos(sin_el);
    }
}

AccessMatrices build_impl(std::span<const Ephemeris> ephemerides, const RoverSite& site,
                          double mask_deg, bool parallel) {
    if (ephemerides.empty()) {
        throw std::invalid_argument("build_access_matrices: no ephemerides");
    }
    const Ephemeris& first = ephemerides.front();
    for (const Ephemeris& e : ephemerides) {
        if (e.size() != first.size() || e.step_seconds != first.step_seconds ||
            e.start().tai_seconds != first.start().tai_seconds) {
            throw std::invalid_argument("build_access_matrices: ephemeris grid mismatch");
        }
    }

    AccessMatrices mat;
    mat.n_steps = static_cast<long>(first.size());
    mat.n_sats = static_cast<int>(ephemerides.size());
    mat.step_seconds = first.step_seconds;
    mat.start = first.start();
    mat.satellite_ids.reserve(ephemerides.size());
    for (const Ephemeris& e : ephemerides) mat.satellite_ids.push_back(e.satellite_id);
    mat.z_km.resize(static_cast<std::size_t>(mat.n_steps) * mat.n_sats);
    mat.psi_rad.resize(mat.z_km.size());

    const SurfacePoint site_body = surface_point(site.lat_deg, site.lon_deg);

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long n = 0; n < mat.n_steps; ++n) {
            fill_row(mat, ephemerides, site_body, site.panel_mode, mask_deg, n);
        }
    } else {
        for (long n = 0; n < mat.n_steps; ++n) {
            fill_row(mat, ephemerides, site_body, site.panel_mode, mask_deg, n);
        }
    }
    return mat;
}

}  // namespace

AccessMatrices build_access_matrices(std::span<const Ephemeris> ephemerides, const RoverSite& site,
                                     double mask_deg) {
    return build_impl(ephemerides, site, mask_deg, true);
}

AccessMatrices build_access_matrices_serial(std::span<const Ephemeris> ephemerides,
                                            const RoverSite& site, double mask_deg) {
    return build_impl(ephemerides, site, mask_deg, false);
}

}  // namespace lunarbeam
