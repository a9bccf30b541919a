#ifndef LUNARBEAM_CORE_HPP
#define LUNARBEAM_CORE_HPP

#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace lunarbeam {

// ---------------------------------------------------------------------------
// Vec3: Cartesian triple in km (positions) or km/s (velocities).
// ---------------------------------------------------------------------------
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr bool operator==(const Vec3& o) const = default;

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// ---------------------------------------------------------------------------
// Epoch: uniform second count from the simulation start instant,
// 2025-01-01T00:00:00 (no leap seconds).
// ---------------------------------------------------------------------------
struct Epoch {
    double tai_seconds = 0.0;

    constexpr auto operator<=>(const Epoch&) const = default;
    constexpr Epoch operator+(double dt) const { return {tai_seconds + dt}; }
    constexpr double operator-(const Epoch& o) const { return tai_seconds - o.tai_seconds; }
};

// ISO-8601 conversion relative to the 2025-01-01T00:00:00 reference.
// Accepts "YYYY-MM-DDTHH:MM:SS[.fff...][Z]"; returns nullopt on malformed input.
std::optional<Epoch> epoch_from_iso(std::string_view iso);
std::string epoch_to_iso(Epoch epoch);

// ---------------------------------------------------------------------------
// StateVector: epoch-tagged position/velocity in the Moon-centered
// inertial frame (km, km/s).
// ---------------------------------------------------------------------------
struct StateVector {
    Epoch epoch;
    Vec3 r;  // km
    Vec3 v;  // km/s
};

// ---------------------------------------------------------------------------
// Physical constants (km, s, kg, W).
// ---------------------------------------------------------------------------
namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double mu_moon = 4902.800066;            // km^3/s^2
inline constexpr double r_moon = 1737.4;                  // km
inline constexpr double mu_earth = 398600.4418;           // km^3/s^2
inline constexpr double mu_sun = 1.32712440018e11;        // km^3/s^2
inline constexpr double earth_moon_dist = 384400.0;       // km
inline constexpr double moon_sidereal_period = 27.321661 * 86400.0;  // s
inline constexpr double sun_orbit_period = 365.25 * 86400.0;         // s
inline constexpr double au = 1.495978707e8;               // km
inline constexpr double solar_flux_1au = 1361.0;          // W/m^2
inline constexpr double c_light = 299792.458;             // km/s
inline constexpr double moon_spin_rate = 2.0 * pi / moon_sidereal_period;  // rad/s
}  // namespace constants

constexpr double deg2rad(double d) { return d * constants::pi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / constants::pi; }

// ---------------------------------------------------------------------------
// Frames. The Moon-centered inertial frame has the spin axis along +z and no
// axial tilt; the body frame rotates uniformly about +z at the sidereal rate.
// A site at an exact pole is therefore stationary in the inertial frame.
// ---------------------------------------------------------------------------

// Express an inertial vector in body-fixed axes at the given epoch.
Vec3 moon_inertial_to_body(Epoch epoch, const Vec3& v);

// Inverse rotation; round-trips with the above to 1e-12.
Vec3 moon_body_to_inertial(Epoch epoch, const Vec3& v);

struct SurfacePoint {
    Vec3 position;  // body-fixed, km, on the sphere of radius r_moon
    Vec3 normal;    // outward unit normal
};

// Body-fixed point on the spherical Moon. lat in [-90, 90], lon in [-180, 360).
// Throws std::invalid_argument for out-of-range angles.
SurfacePoint surface_point(double lat_deg, double lon_deg);

}  // namespace lunarbeam

#endif
