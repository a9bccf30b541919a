#ifndef LUNARBEAM_DYNAMICS_HPP
#define LUNARBEAM_DYNAMICS_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lunarbeam/core.hpp"

namespace lunarbeam {

// Thrown when a trajectory reaches the lunar surface.
struct ImpactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Selectable perturbations on top of the lunar point mass. Earth and Sun move
// on analytic circles in the inertial x-y plane (radius 384,400 km at the
// sidereal month, 1 AU at 365.25 d); SRP is a cannonball with a cylindrical
// umbra; the albedo term is a crude constant radial stand-in for lunar
// radiation pressure.
// ---------------------------------------------------------------------------
struct ForceModelConfig {
    bool earth_third_body = false;
    bool sun_third_body = false;
    bool srp = false;
    double srp_cr = 1.3;        // reflectivity coefficient in [1, 2]
    double srp_area_m2 = 10.0;  // cross-section, m^2
    double sat_mass_kg = 500.0;
    bool lunar_j2 = false;
    bool albedo = false;
    double albedo_coeff = 0.12;

    void validate() const;

    static ForceModelConfig two_body() { return {}; }
    // The perturbation set named by the reference study: third bodies,
    // SRP, Moon radiation pressure.
    static ForceModelConfig perturbed() {
        ForceModelConfig cfg;
        cfg.earth_third_body = true;
        cfg.sun_third_body = true;
        cfg.srp = true;
        cfg.albedo = true;
        return cfg;
    }
};

// Analytic third-body positions in the Moon-centered inertial frame.
Vec3 earth_position(Epoch epoch);
Vec3 sun_position(Epoch epoch);

// True when the satellite is inside the cylindrical lunar umbra.
bool in_moon_shadow(const Vec3& sat_r, const Vec3& sun_r);

// Total acceleration (km/s^2). Throws ImpactError when |r| <= r_moon.
Vec3 accel(const StateVector& state, const ForceModelConfig& cfg);

// ---------------------------------------------------------------------------
// Ephemeris: states at a fixed cadence. samples[k].epoch = start + k * step.
// ---------------------------------------------------------------------------
struct Ephemeris {
    int satellite_id = 0;
    double step_seconds = 60.0;
    std::vector<StateVector> samples;

    Epoch start() const { return samples.front().epoch; }
    std::size_t size() const { return samples.size(); }
};

struct IntegratorOptions {
    double rtol = 1e-12;
    double atol = 1e-12;   // km / km s^-1 (see notes: 1e-9 km is too loose for
                           // the <1e-9 relative energy-drift requirement)
    double h_initial = 1.0;
    double h_max = 120.0;
    double safety = 0.85;
};

// Adaptive Dormand-Prince 5(4) with cubic-Hermite dense output on the uniform
// grid initial.epoch + k * output_step_s, k = 0..horizon/output_step.
// horizon_s must be a positive multiple of output_step_s.
// Throws ImpactError on surface impact, std::runtime_error on step underflow.
Ephemeris propagate(const StateVector& initial, const ForceModelConfig& cfg, double horizon_s,
                    double output_step_s, const IntegratorOptions& opts = {});

// ---------------------------------------------------------------------------
// Ephemeris text file format:
//   # lunarbeam-ephem v1
//   # frame: MOON_INERTIAL
//   # satellite: <id>
//   <ISO-8601 epoch>  x y z vx vy vz   (km, km/s, 17 significant digits)
// ---------------------------------------------------------------------------
void write_ephemeris(const Ephemeris& eph, std::ostream& os);
void write_ephemeris_file(const Ephemeris& eph, const std::string& path);

// Parse and resample onto a uniform grid via cubic Hermite interpolation on
// the stored velocities. With n_steps == 0 the grid spans the file (start at
// the first sample). Errors (std::runtime_error): malformed line (number
// reported), non-increasing epochs, sample gap > 10 min, frame tag mismatch,
// grid not covered.
Ephemeris ingest_ephemeris(std::istream& is, double grid_step_s = 60.0,
                           Epoch grid_start = Epoch{0.0}, long n_steps = 0,
                           const std::string& name = "<stream>");
Ephemeris ingest_ephemeris_file(const std::string& path, double grid_step_s = 60.0,
                                Epoch grid_start = Epoch{0.0}, long n_steps = 0);

}  // namespace lunarbeam

#endif
