#include "lunarbeam/core.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace lunarbeam {

namespace {

// Days from civil date, algorithm by Howard Hinnant (public domain).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yr = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

const long long k_ref_day = days_from_civil(2025, 1, 1);

}  // namespace

std::optional<Epoch> epoch_from_iso(std::string_view iso) {
    // YYYY-MM-DDTHH:MM:SS[.fff][Z]
    int y, mo, d, h, mi;
    double s;
    char t_sep;
    int consumed = 0;
    std::string buf(iso);
    if (std::sscanf(buf.c_str(), "%d-%d-%d%c%d:%d:%lf%n", &y, &mo, &d, &t_sep, &h, &mi, &s,
                    &consumed) != 7) {
        return std::nullopt;
    }
    if (t_sep != 'T' && t_sep != ' ') return std::nullopt;
    std::string_view rest = iso.substr(consumed);
    if (!rest.empty() && rest != "Z") return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0.0 ||
        s >= 61.0) {
        return std::nullopt;
    }
    const double days = static_cast<double>(days_from_civil(y, mo, d) - k_ref_day);
    return Epoch{days * 86400.0 + h * 3600.0 + mi * 60.0 + s};
}

std::string epoch_to_iso(Epoch epoch) {
    double t = epoch.tai_seconds;
    long long day = static_cast<long long>(std::floor(t / 86400.0));
    double sod = t - static_cast<double>(day) * 86400.0;
    // Guard the day boundary against rounding when the fraction is ~86400.
    if (sod >= 86400.0) {
        day += 1;
        sod -= 86400.0;
    }
    int y;
    unsigned mo, d;
    civil_from_days(k_ref_day + day, y, mo, d);
    const int h = static_cast<int>(sod / 3600.0);
    const int mi = static_cast<int>((sod - h * 3600.0) / 60.0);
    const double s = sod - h * 3600.0 - mi * 60.0;
    char out[48];
    const double s_int = std::round(s);
    if (std::abs(s - s_int) < 5e-7) {
        std::snprintf(out, sizeof(out), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, mo, d, h, mi,
                      static_cast<int>(s_int));
    } else {
        std::snprintf(out, sizeof(out), "%04d-%02u-%02uT%02d:%02d:%09.6fZ", y, mo, d, h, mi, s);
    }
    return out;
}

Vec3 moon_inertial_to_body(Epoch epoch, const Vec3& v) {
    const double theta = constants::moon_spin_rate * epoch.tai_seconds;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // R_z(-theta) applied to the inertial vector.
    return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

Vec3 moon_body_to_inertial(Epoch epoch, const Vec3& v) {
    const double theta = constants::moon_spin_rate * epoch.tai_seconds;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

SurfacePoint surface_point(double lat_deg, double lon_deg) {
    if (!(lat_deg >= -90.0 && lat_deg <= 90.0)) {
        throw std::invalid_argument("surface_point: latitude out of [-90, 90]: " +
                                    std::to_string(lat_deg));
    }
    if (!(lon_deg >= -180.0 && lon_deg < 360.0)) {
        throw std::invalid_argument("surface_point: longitude out of [-180, 360): " +
                                    std::to_string(lon_deg));
    }
    const double lat = deg2rad(lat_deg);
    const double lon = deg2rad(lon_deg);
    const Vec3 normal{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    return {normal * constants::r_moon, normal};
}

}  // namespace lunarbeam
