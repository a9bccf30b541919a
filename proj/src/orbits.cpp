#include "lunarbeam/orbits.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lunarbeam {

using constants::pi;

void KeplerianElements::validate() const {
    if (!(a > constants::r_moon)) {
        throw std::invalid_argument("elements: semi-major axis must exceed r_moon, got " +
                                    std::to_string(a));
    }
    if (!(e >= 0.0 && e < 1.0)) {
        throw std::invalid_argument("elements: eccentricity must be in [0, 1), got " +
                                    std::to_string(e));
    }
    if (!(inc >= 0.0 && inc <= pi)) {
        throw std::invalid_argument("elements: inclination must be in [0, pi], got " +
                                    std::to_string(inc));
    }
}

double orbital_period(double a_km, double mu) {
    return 2.0 * pi * std::sqrt(a_km * a_km * a_km / mu);
}

double solve_kepler(double mean_anomaly, double e) {
    if (!(e >= 0.0 && e < 1.0)) {
        throw std::invalid_argument("solve_kepler: eccentricity must be in [0, 1)");
    }
    // Keep E in the same revolution as M: solve for the 2pi-reduced anomaly
    // and add back the revolution offset.
    const double two_pi = 2.0 * pi;
    const double rev = std::floor(mean_anomaly / two_pi);
    const double m = mean_anomaly - rev * two_pi;

    double ecc_anomaly = e < 0.8 ? m : pi;
    for (int it = 0; it < 50; ++it) {
        const double f = ecc_anomaly - e * std::sin(ecc_anomaly) - m;
        if (std::abs(f) < 1e-13) {
            return ecc_anomaly + rev * two_pi;
        }
        ecc_anomaly -= f / (1.0 - e * std::cos(ecc_anomaly));
    }
    throw std::runtime_error("solve_kepler: no convergence after 50 iterations (M=" +
                             std::to_string(mean_anomaly) + ", e=" + std::to_string(e) + ")");
}

StateVector elements_to_state(const KeplerianElements& el, double mu) {
    el.validate();
    const double p = el.a * (1.0 - el.e * el.e);  // semi-latus rectum
    const double r = p / (1.0 + el.e * std::cos(el.ta));
    const double h = std::sqrt(mu * p);  // angular momentum magnitude

    // Perifocal position/velocity.
    const double cta = std::cos(el.ta);
    const double sta = std::sin(el.ta);
    const Vec3 r_pqw{r * cta, r * sta, 0.0};
    const Vec3 v_pqw{-mu / h * sta, mu / h * (el.e + cta), 0.0};

    // Rotate perifocal -> inertial: R_z(raan) R_x(inc) R_z(argp).
    const double co = std::cos(el.raan), so = std::sin(el.raan);
    const double ci = std::cos(el.inc), si = std::sin(el.inc);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);
    const Vec3 row_x{co * cw - so * sw * ci, -co * sw - so * cw * ci, so * si};
    const Vec3 row_y{so * cw + co * sw * ci, -so * sw + co * cw * ci, -co * si};
    const Vec3 row_z{sw * si, cw * si, ci};

    auto rotate = [&](const Vec3& v) {
        return Vec3{row_x.dot(v), row_y.dot(v), row_z.dot(v)};
    };
    return {el.epoch, rotate(r_pqw), rotate(v_pqw)};
}

KeplerianElements state_to_elements(const StateVector& s, double mu) {
    const double two_pi = 2.0 * pi;
    const double rn = s.r.norm();
    const double vn2 = s.v.dot(s.v);
    const Vec3 h = s.r.cross(s.v);
    const double hn = h.norm();
    const Vec3 node{-h.y, h.x, 0.0};  // z-hat x h
    const double nn = node.norm();

    const Vec3 e_vec = (s.v.cross(h)) / mu - s.r / rn;
    const double e = e_vec.norm();
    const double energy = vn2 / 2.0 - mu / rn;
    const double a = -mu / (2.0 * energy);

    KeplerianElements el;
    el.epoch = s.epoch;
    el.a = a;
    el.e = e;
    el.inc = std::acos(std::clamp(h.z / hn, -1.0, 1.0));

    const bool equatorial = nn < 1e-11 * hn;
    const bool circular = e < 1e-11;

    auto wrap = [&](double x) { return x - two_pi * std::floor(x / two_pi); };
    auto angle_between = [&](const Vec3& u, const Vec3& v) {
        return std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0));
    };

    if (equatorial) {
        el.raan = 0.0;
    } else {
        el.raan = wrap(std::atan2(node.y, node.x));
    }

    if (circular) {
        el.argp = 0.0;
        // True anomaly from the node (argument of latitude) for circular orbits.
        const Vec3 ref = equatorial ? Vec3{1.0, 0.0, 0.0} : node;
        double u = angle_between(ref, s.r);
        if (s.r.z < 0.0 && !equatorial) u = two_pi - u;
        if (equatorial && s.r.y < 0.0) u = two_pi - u;
        el.ta = wrap(u);
    } else {
        const Vec3 ref = equatorial ? Vec3{1.0, 0.0, 0.0} : node;
        double argp = angle_between(ref, e_vec);
        if (e_vec.z < 0.0 && !equatorial) argp = two_pi - argp;
        if (equatorial && e_vec.y < 0.0) argp = two_pi - argp;
        el.argp = wrap(argp);
        double ta = angle_between(e_vec, s.r);
        if (s.r.dot(s.v) < 0.0) ta = two_pi - ta;
        el.ta = wrap(ta);
    }
    return el;
}

void ConstellationSpec::validate() const {
    if (n_sats < 1) {
        throw std::invalid_argument("constellation: n_sats must be positive");
    }
    if (std::abs(n_sats * ta_step_deg - 360.0) > 1e-9) {
        throw std::invalid_argument("constellation: n_sats * ta_step must equal 360 deg, got " +
                                    std::to_string(n_sats * ta_step_deg));
    }
    if (raan_list_deg.empty()) {
        throw std::invalid_argument("constellation: raan list must be non-empty");
    }
    for (double raan : raan_list_deg) {
        if (!(raan >= 0.0 && raan < 360.0)) {
            throw std::invalid_argument("constellation: RAAN out of [0, 360): " +
                                        std::to_string(raan));
        }
    }
    KeplerianElements probe{a, e, deg2rad(inc_deg), 0.0, deg2rad(argp_deg), 0.0, epoch};
    probe.validate();
}

std::vector<std::pair<SatelliteId, KeplerianElements>> build_constellation(
    const ConstellationSpec& spec) {
    spec.validate();
    std::vector<std::pair<SatelliteId, KeplerianElements>> out;
    out.reserve(spec.n_sats);
    const std::size_t k = spec.raan_list_deg.size();
    for (int i = 1; i <= spec.n_sats; ++i) {
        SatelliteId id;
        id.index = i;
        id.ta_deg = spec.ta_start_deg + (i - 1) * spec.ta_step_deg;
        id.raan_deg = spec.raan_list_deg[static_cast<std::size_t>(i - 1) % k];
        KeplerianElements el;
        el.a = spec.a;
        el.e = spec.e;
        el.inc = deg2rad(spec.inc_deg);
        el.raan = deg2rad(id.raan_deg);
        el.argp = deg2rad(spec.argp_deg);
        el.ta = deg2rad(id.ta_deg);
        el.epoch = spec.epoch;
        out.emplace_back(id, el);
    }
    return out;
}

}  // namespace lunarbeam
