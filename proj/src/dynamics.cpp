#include "lunarbeam/dynamics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lunarbeam {

using constants::pi;

namespace {
constexpr double k_j2_moon = 2.033e-4;
constexpr double k_c_light_si = 299792.458e3;  // m/s
}  // namespace

void ForceModelConfig::validate() const {
    if (srp) {
        if (!(srp_cr >= 1.0 && srp_cr <= 2.0)) {
            throw std::invalid_argument("force model: srp_cr must be in [1, 2]");
        }
        if (!(srp_area_m2 >= 0.0)) {
            throw std::invalid_argument("force model: srp area must be non-negative");
        }
        if (!(sat_mass_kg > 0.0)) {
            throw std::invalid_argument("force model: satellite mass must be positive");
        }
    }
    if (albedo && !(albedo_coeff >= 0.0 && albedo_coeff <= 1.0)) {
        throw std::invalid_argument("force model: albedo coefficient must be in [0, 1]");
    }
}

Vec3 earth_position(Epoch epoch) {
    const double th = 2.0 * pi / constants::moon_sidereal_period * epoch.tai_seconds;
    return {constants::earth_moon_dist * std::cos(th), constants::earth_moon_dist * std::sin(th),
            0.0};
}

Vec3 sun_position(Epoch epoch) {
    const double th = 2.0 * pi / constants::sun_orbit_period * epoch.tai_seconds;
    return {constants::au * std::cos(th), constants::au * std::sin(th), 0.0};
}

bool in_moon_shadow(const Vec3& sat_r, const Vec3& sun_r) {
    const Vec3 sun_hat = sun_r.normalized();
    const double along = sat_r.dot(sun_hat);
    if (along >= 0.0) return false;  // sunward side
    const Vec3 perp = sat_r - sun_hat * along;
    return perp.norm() < constants::r_moon;
}

namespace {

Vec3 third_body_accel(const Vec3& sat_r, const Vec3& body_r, double mu_body) {
    const Vec3 d = body_r - sat_r;
    const double dn = d.norm();
    const double bn = body_r.norm();
    return d * (mu_body / (dn * dn * dn)) - body_r * (mu_body / (bn * bn * bn));
}

// Radiation-pressure acceleration magnitude in km/s^2 for a cannonball at
// the given solar flux.
double rp_accel_km_s2(double flux_w_m2, double cr, double area_m2, double mass_kg) {
    return flux_w_m2 / k_c_light_si * cr * area_m2 / mass_kg * 1e-3;
}

}  // namespace

Vec3 accel(const StateVector& state, const ForceModelConfig& cfg) {
    const Vec3& r = state.r;
    const double rn = r.norm();
    if (rn <= constants::r_moon) {
        throw ImpactError("trajectory reached the lunar surface at t=" +
                          std::to_string(state.epoch.tai_seconds) + " s (r=" +
                          std::to_string(rn) + " km)");
    }
    Vec3 a = r * (-constants::mu_moon / (rn * rn * rn));

    if (cfg.earth_third_body) {
        a += third_body_accel(r, earth_position(state.epoch), constants::mu_earth);
    }
    if (cfg.sun_third_body) {
        a += third_body_accel(r, sun_position(state.epoch), constants::mu_sun);
    }
    if (cfg.srp) {
        const Vec3 sun_r = sun_position(state.epoch);
        if (!in_moon_shadow(r, sun_r)) {
            const Vec3 d = r - sun_r;  // Sun -> satellite
            const double dn = d.norm();
            const double scale = constants::au / dn;
            const double mag = rp_accel_km_s2(constants::solar_flux_1au, cfg.srp_cr,
                                              cfg.srp_area_m2, cfg.sat_mass_kg) *
                               scale * scale;
            a += d * (mag / dn);
        }
    }
    if (cfg.lunar_j2) {
        const double re = constants::r_moon;
        const double k = -1.5 * k_j2_moon * constants::mu_moon * re * re / std::pow(rn, 5);
        const double z2r2 = r.z * r.z / (rn * rn);
        a += Vec3{k * r.x * (1.0 - 5.0 * z2r2), k * r.y * (1.0 - 5.0 * z2r2),
                  k * r.z * (3.0 - 5.0 * z2r2)};
    }
    if (cfg.albedo) {
        const double mag = cfg.albedo_coeff * rp_accel_km_s2(constants::solar_flux_1au, cfg.srp_cr,
                                                             cfg.srp_area_m2, cfg.sat_mass_kg);
        a += r * (mag / rn);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), FSAL, with the scipy-style RMS error norm.
// ---------------------------------------------------------------------------
namespace {

using State6 = std::array<double, 6>;

State6 pack(const Vec3& r, const Vec3& v) { return {r.x, r.y, r.z, v.x, v.y, v.z}; }
Vec3 pos_of(const State6& y) { return {y[0], y[1], y[2]}; }
Vec3 vel_of(const State6& y) { return {y[3], y[4], y[5]}; }

State6 deriv(double t, const State6& y, const ForceModelConfig& cfg) {
    StateVector s{Epoch{t}, pos_of(y), vel_of(y)};
    const Vec3 a = accel(s, cfg);
    return {y[3], y[4], y[5], a.x, a.y, a.z};
}

constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
                 A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
// b - b*: weights of the embedded error estimate.
constexpr double E1 = 35.0 / 384.0 - 5179.0 / 57600.0;
constexpr double E3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
constexpr double E4 = 125.0 / 192.0 - 393.0 / 640.0;
constexpr double E5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
constexpr double E6 = 11.0 / 84.0 - 187.0 / 2100.0;
constexpr double E7 = -1.0 / 40.0;
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;

struct StepResult {
    State6 y_new;
    State6 f_new;  // FSAL derivative at the right endpoint
    double err_norm;
};

StepResult dp54_step(double t, const State6& y, const State6& f1, double h,
                     const ForceModelConfig& cfg, double rtol, double atol) {
    State6 k2, k3, k4, k5, k6, y_new, tmp;
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * A21 * f1[i];
    k2 = deriv(t + C2 * h, tmp, cfg);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (A31 * f1[i] + A32 * k2[i]);
    k3 = deriv(t + C3 * h, tmp, cfg);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (A41 * f1[i] + A42 * k2[i] + A43 * k3[i]);
    k4 = deriv(t + C4 * h, tmp, cfg);
    for (int i = 0; i < 6; ++i) {
        tmp[i] = y[i] + h * (A51 * f1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    k5 = deriv(t + C5 * h, tmp, cfg);
    for (int i = 0; i < 6; ++i) {
        tmp[i] = y[i] + h * (A61 * f1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    k6 = deriv(t + h, tmp, cfg);
    for (int i = 0; i < 6; ++i) {
        y_new[i] = y[i] + h * (B1 * f1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    }
    const State6 f_new = deriv(t + h, y_new, cfg);

    double sum = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double e = h * (E1 * f1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                              E7 * f_new[i]);
        const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        const double q = e / scale;
        sum += q * q;
    }
    return {y_new, f_new, std::sqrt(sum / 6.0)};
}

// Cubic Hermite interpolation of the accepted step [t0, t0+h].
State6 hermite(const State6& y0, const State6& f0, const State6& y1, const State6& f1, double h,
               double tau) {
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + tau;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    State6 out;
    for (int i = 0; i < 6; ++i) {
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
    return out;
}

}  // namespace

Ephemeris propagate(const StateVector& initial, const ForceModelConfig& cfg, double horizon_s,
                    double output_step_s, const IntegratorOptions& opts) {
    cfg.validate();
    if (!(horizon_s > 0.0) || !(output_step_s > 0.0)) {
        throw std::invalid_argument("propagate: horizon and output step must be positive");
    }
    const long n_out = std::lround(horizon_s / output_step_s);
    if (std::abs(n_out * output_step_s - horizon_s) > 1e-9) {
        throw std::invalid_argument("propagate: output step must divide the horizon");
    }

    Ephemeris eph;
    eph.step_seconds = output_step_s;
    eph.samples.reserve(static_cast<std::size_t>(n_out) + 1);
    eph.samples.push_back(initial);

    const double t_end = horizon_s;
    double t = 0.0;
    State6 y = pack(initial.r, initial.v);
    State6 f = deriv(t, y, cfg);
    double h = std::min(opts.h_initial, std::min(opts.h_max, t_end));
    long next_out = 1;

    auto emit = [&](double t_sample, const State6& ys) {
        eph.samples.push_back(StateVector{initial.epoch + t_sample, pos_of(ys), vel_of(ys)});
    };

    while (t < t_end) {
        if (h > t_end - t) h = t_end - t;
        if (h < 1e-9 * std::max(1.0, std::abs(t))) {
            throw std::runtime_error("propagate: step-size underflow at t=" + std::to_string(t));
        }
        const StepResult step = dp54_step(t, y, f, h, cfg, opts.rtol, opts.atol);
        if (step.err_norm <= 1.0) {
            const double t_new = t + h;
            // Dense output on grid points inside (t, t_new].
            while (next_out <= n_out) {
                const double ts = next_out * output_step_s;
                if (ts > t_new + 1e-9) break;
                if (std::abs(ts - t_new) <= 1e-9) {
                    emit(ts, step.y_new);
                } else {
                    emit(ts, hermite(y, f, step.y_new, step.f_new, h, (ts - t) / h));
                }
                ++next_out;
            }
            const double rn = pos_of(step.y_new).norm();
            if (rn <= constants::r_moon) {
                throw ImpactError("trajectory reached the lunar surface at t=" +
                                  std::to_string(t_new) + " s");
            }
            t = t_new;
            y = step.y_new;
            f = step.f_new;
            const double factor =
                step.err_norm == 0.0
                    ? 10.0
                    : std::min(10.0, opts.safety * std::pow(step.err_norm, -0.2));
            h = std::min(opts.h_max, h * std::max(factor, 0.2));
        } else {
            h *= std::max(0.2, opts.safety * std::pow(step.err_norm, -0.2));
        }
    }
    return eph;
}

// ---------------------------------------------------------------------------
// Ephemeris files.
// ---------------------------------------------------------------------------

void write_ephemeris(const Ephemeris& eph, std::ostream& os) {
    os << "# lunarbeam-ephem v1\n";
    os << "# frame: MOON_INERTIAL\n";
    os << "# satellite: " << eph.satellite_id << "\n";
    char line[256];
    for (const StateVector& s : eph.samples) {
        std::snprintf(line, sizeof(line), " %.17g %.17g %.17g %.17g %.17g %.17g\n", s.r.x, s.r.y,
                      s.r.z, s.v.x, s.v.y, s.v.z);
        os << epoch_to_iso(s.epoch) << line;
    }
}

void write_ephemeris_file(const Ephemeris& eph, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_ephemeris(eph, os);
}

namespace {

StateVector hermite_state(const StateVector& s0, const StateVector& s1, double t_abs) {
    const double h = s1.epoch - s0.epoch;
    const double tau = (t_abs - s0.epoch.tai_seconds) / h;
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + tau;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    // Derivatives of the basis for the interpolated velocity.
    const double d00 = (6.0 * t2 - 6.0 * tau) / h;
    const double d10 = 3.0 * t2 - 4.0 * tau + 1.0;
    const double d01 = (-6.0 * t2 + 6.0 * tau) / h;
    const double d11 = 3.0 * t2 - 2.0 * tau;
    StateVector out;
    out.epoch = Epoch{t_abs};
    out.r = s0.r * h00 + s0.v * (h10 * h) + s1.r * h01 + s1.v * (h11 * h);
    out.v = s0.r * d00 + s0.v * d10 + s1.r * d01 + s1.v * d11;
    return out;
}

}  // namespace

Ephemeris ingest_ephemeris(std::istream& is, double grid_step_s, Epoch grid_start, long n_steps,
                           const std::string& name) {
    std::string line;
    long line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + what);
    };

    Ephemeris raw;
    bool version_seen = false;
    bool frame_seen = false;
    std::vector<StateVector> samples;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "lunarbeam-ephem") {
                std::string ver;
                hs >> ver;
                if (ver != "v1") fail("unsupported ephemeris version '" + ver + "'");
                version_seen = true;
            } else if (key == "frame:") {
                std::string frame;
                hs >> frame;
                if (frame != "MOON_INERTIAL") {
                    fail("frame tag mismatch: expected MOON_INERTIAL, got '" + frame + "'");
                }
                frame_seen = true;
            } else if (key == "satellite:") {
                hs >> raw.satellite_id;
            }
            continue;
        }
        std::istringstream ls(line);
        std::string iso;
        StateVector s;
        if (!(ls >> iso >> s.r.x >> s.r.y >> s.r.z >> s.v.x >> s.v.y >> s.v.z)) {
            fail("malformed ephemeris line");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        const auto ep = epoch_from_iso(iso);
        if (!ep) fail("malformed epoch '" + iso + "'");
        s.epoch = *ep;
        if (!samples.empty()) {
            const double dt = s.epoch - samples.back().epoch;
            if (dt <= 0.0) fail("epochs not strictly increasing");
            if (dt > 600.0) fail("sample gap of " + std::to_string(dt) + " s exceeds 10 min");
        }
        samples.push_back(s);
    }
    line_no = 0;
    if (!version_seen) fail("missing '# lunarbeam-ephem v1' header");
    if (!frame_seen) fail("missing '# frame:' header");
    if (samples.size() < 2) fail("ephemeris needs at least two samples");

    if (n_steps <= 0) {
        grid_start = samples.front().epoch;
        n_steps = static_cast<long>(std::floor((samples.back().epoch - grid_start) /
                                               grid_step_s)) + 1;
    }
    const double span_begin = grid_start.tai_seconds;
    const double span_end = span_begin + (n_steps - 1) * grid_step_s;
    if (span_begin < samples.front().epoch.tai_seconds - 1e-9 ||
        span_end > samples.back().epoch.tai_seconds + 1e-9) {
        fail("ephemeris does not cover the requested grid [" + std::to_string(span_begin) + ", " +
             std::to_string(span_end) + "] s");
    }

    Ephemeris out;
    out.satellite_id = raw.satellite_id;
    out.step_seconds = grid_step_s;
    out.samples.reserve(static_cast<std::size_t>(n_steps));
    std::size_t seg = 0;
    for (long k = 0; k < n_steps; ++k) {
        const double tk = span_begin + k * grid_step_s;
        while (seg + 2 < samples.size() && samples[seg + 1].epoch.tai_seconds < tk - 1e-9) ++seg;
        const StateVector& s0 = samples[seg];
        const StateVector& s1 = samples[seg + 1];
        if (std::abs(s0.epoch.tai_seconds - tk) < 1e-9) {
            out.samples.push_back({Epoch{tk}, s0.r, s0.v});
        } else if (std::abs(s1.epoch.tai_seconds - tk) < 1e-9) {
            out.samples.push_back({Epoch{tk}, s1.r, s1.v});
        } else {
            out.samples.push_back(hermite_state(s0, s1, tk));
        }
    }
    return out;
}

Ephemeris ingest_ephemeris_file(const std::string& path, double grid_step_s, Epoch grid_start,
                                long n_steps) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open ephemeris file: " + path);
    return ingest_ephemeris(is, grid_step_s, grid_start, n_steps, path);
}

}  // namespace lunarbeam
