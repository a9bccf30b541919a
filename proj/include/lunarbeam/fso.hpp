#ifndef LUNARBEAM_FSO_HPP
#define LUNARBEAM_FSO_HPP

#include "lunarbeam/core.hpp"

namespace lunarbeam {

// ---------------------------------------------------------------------------
// Gaussian-beam free-space optics power budget. Distances in this module are
// metres (beam-scale quantities); the geometry modules hand over slant ranges
// in km and convert at the call site.
// ---------------------------------------------------------------------------

struct LaserConfig {
    double input_power_w = 1000.0;       // electrical input P_I
    double wavelength_m = 1064e-9;       // lambda
    double eta_t = 0.51;                 // electro-optical conversion efficiency
    double aperture_diameter_m = 0.3;    // transmit telescope diameter d_l

    // Far-field divergence, theta ~= lambda / d_l.
    double divergence_rad() const { return wavelength_m / aperture_diameter_m; }
    // Beam waist w0 = lambda / (pi theta) (= d_l / pi).
    double waist_m() const { return wavelength_m / (constants::pi * divergence_rad()); }

    void validate() const;
};

struct PanelConfig {
    double diameter_m = 2.0;         // circular array diameter d_r
    double eta_r = 0.689;            // optoelectric conversion efficiency
    double misalignment_loss = 1.0;  // L_m in [0, 1]; 1 = perfect alignment

    double radius_m() const { return 0.5 * diameter_m; }
    double area_m2() const { return constants::pi * radius_m() * radius_m(); }

    void validate() const;
};

struct LinkResult {
    double received_w = 0.0;       // optical P_R
    double harvested_w = 0.0;      // electrical P_H = P_R * L_m * eta_r
    double efficiency_pct = 0.0;   // zeta = 100 * P_H / P_I
};

// 1/e^2 beam radius at axial distance z: w(z) = w0 sqrt(1 + (z lambda / (pi w0^2))^2).
double beam_radius(double z_m, const LaserConfig& laser);

// Gaussian irradiance I(r, z) in W/m^2; the full-plane integral is eta_t * P_I.
double irradiance(double r_m, double z_m, const LaserConfig& laser);

// Power captured by the centred circular panel (closed form of the polar
// integral): eta_t * P_I * (1 - exp(-2 a^2 / w(z)^2)) with a the panel radius.
double received_power_tracking(double z_m, const LaserConfig& laser, const PanelConfig& panel);

// Fixed panel: the tracking capture scaled by cos(psi); psi >= pi/2 yields 0.
double received_power_fixed(double z_m, double psi_rad, const LaserConfig& laser,
                            const PanelConfig& panel);

// Electrical harvest and end-to-end efficiency for a received optical power.
LinkResult harvest(double received_w, const LaserConfig& laser, const PanelConfig& panel);

// cos(psi) clamped to zero at and beyond grazing incidence. Shared by the
// fixed-panel power path and the series computation so the fixed/tracking
// ratio is bit-exact.
double incidence_factor(double psi_rad);

}  // namespace lunarbeam

#endif
