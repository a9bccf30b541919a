#include "lunarbeam/fso.hpp"

#include <cmath>
#include <stdexcept>

namespace lunarbeam {

using constants::pi;

void LaserConfig::validate() const {
    if (!(input_power_w > 0.0)) throw std::invalid_argument("laser: input power must be positive");
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("laser: wavelength must be positive");
    if (!(eta_t > 0.0 && eta_t <= 1.0)) {
        throw std::invalid_argument("laser: eta_t must be in (0, 1]");
    }
    if (!(aperture_diameter_m > 0.0)) {
        throw std::invalid_argument("laser: aperture diameter must be positive");
    }
}

void PanelConfig::validate() const {
    if (!(diameter_m >= 0.0)) throw std::invalid_argument("panel: diameter must be non-negative");
    if (!(eta_r > 0.0 && eta_r <= 1.0)) {
        throw std::invalid_argument("panel: eta_r must be in (0, 1]");
    }
    if (!(misalignment_loss >= 0.0 && misalignment_loss <= 1.0)) {
        throw std::invalid_argument("panel: misalignment loss must be in [0, 1]");
    }
}

double beam_radius(double z_m, const LaserConfig& laser) {
    const double w0 = laser.waist_m();
    const double q = z_m * laser.wavelength_m / (pi * w0 * w0);
    return w0 * std::sqrt(1.0 + q * q);
}

double irradiance(double r_m, double z_m, const LaserConfig& laser) {
    const double w = beam_radius(z_m, laser);
    const double peak = 2.0 * laser.eta_t * laser.input_power_w / (pi * w * w);
    return peak * std::exp(-2.0 * r_m * r_m / (w * w));
}

double received_power_tracking(double z_m, const LaserConfig& laser, const PanelConfig& panel) {
    const double w = beam_radius(z_m, laser);
    const double a = panel.radius_m();
    const double capture = 1.0 - std::exp(-2.0 * a * a / (w * w));
    return laser.eta_t * laser.input_power_w * capture;
}

double incidence_factor(double psi_rad) {
    if (psi_rad >= pi / 2.0) return 0.0;
    return std::cos(psi_rad);
}

double received_power_fixed(double z_m, double psi_rad, const LaserConfig& laser,
                            const PanelConfig& panel) {
    return incidence_factor(psi_rad) * received_power_tracking(z_m, laser, panel);
}

LinkResult harvest(double received_w, const LaserConfig& laser, const PanelConfig& panel) {
    LinkResult out;
    out.received_w = received_w;
    out.harvested_w = received_w * panel.misalignment_loss * panel.eta_r;
    out.efficiency_pct = 100.0 * out.harvested_w / laser.input_power_w;
    return out;
}

}  // namespace lunarbeam
