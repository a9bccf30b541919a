#ifndef LUNARBEAM_ORBITS_HPP
#define LUNARBEAM_ORBITS_HPP

#include <utility>
#include <vector>

#include "lunarbeam/core.hpp"

namespace lunarbeam {

// ---------------------------------------------------------------------------
// Osculating Keplerian elements about the Moon (angles in radians).
// ---------------------------------------------------------------------------
struct KeplerianElements {
    double a = 0.0;     // semi-major axis, km (> r_moon)
    double e = 0.0;     // eccentricity in [0, 1)
    double inc = 0.0;   // inclination in [0, pi]
    double raan = 0.0;  // longitude of ascending node
    double argp = 0.0;  // argument of perigee
    double ta = 0.0;    // true anomaly
    Epoch epoch;

    // Throws std::invalid_argument on violated element bounds.
    void validate() const;
};

double orbital_period(double a_km, double mu = constants::mu_moon);

// Kepler's equation E - e sin E = M, solved by Newton iteration from E0 = M.
// Residual below 1e-12; throws std::runtime_error after 50 iterations.
double solve_kepler(double mean_anomaly, double e);

// Perifocal-to-inertial conversion of a full element set.
StateVector elements_to_state(const KeplerianElements& el, double mu = constants::mu_moon);

// Inverse conversion (osculating elements of an inertial state). Angles are
// reduced to [0, 2pi); for near-circular or near-equatorial orbits the
// degenerate angles are measured from the node / the x-axis.
KeplerianElements state_to_elements(const StateVector& s, double mu = constants::mu_moon);

// ---------------------------------------------------------------------------
// Constellation construction. Satellite i (1-based) takes true anomaly
// ta_start + (i-1)*ta_step and cycles through the RAAN list:
// raan_list[(i-1) mod k]. This is the assignment consistent with both
// worked satellite-number examples of the reference configurations.
// ---------------------------------------------------------------------------
struct ConstellationSpec {
    int n_sats = 0;
    double ta_start_deg = 0.0;
    double ta_step_deg = 0.0;
    std::vector<double> raan_list_deg;
    double a = 0.0;
    double e = 0.0;
    double inc_deg = 90.0;
    double argp_deg = 0.0;
    Epoch epoch;

    // n_sats * ta_step must cover 360 degrees exactly; RAANs in [0, 360).
    void validate() const;
};

struct SatelliteId {
    int index = 0;  // 1-based ordinal
    double raan_deg = 0.0;
    double ta_deg = 0.0;
};

std::vector<std::pair<SatelliteId, KeplerianElements>> build_constellation(
    const ConstellationSpec& spec);

}  // namespace lunarbeam

#endif
