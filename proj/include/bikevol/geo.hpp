#ifndef BIKEVOL_GEO_HPP
#define BIKEVOL_GEO_HPP

#include <cmath>
#include <utility>
#include <vector>

namespace bikevol {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }

// Great-circle distance in meters, mean-radius sphere.
inline double haversine_m(double lat1, double lon1, double lat2, double lon2) {
    double phi1 = deg2rad(lat1), phi2 = deg2rad(lat2);
    double dphi = deg2rad(lat2 - lat1), dlam = deg2rad(lon2 - lon1);
    double s1 = std::sin(dphi / 2.0), s2 = std::sin(dlam / 2.0);
    double a = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    if (a > 1.0) a = 1.0;
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(a));
}

// Local meters-per-degree at a reference latitude, for small-offset conversions.
inline double meters_per_deg_lat() { return kEarthRadiusM * kPi / 180.0; }
inline double meters_per_deg_lon(double lat) {
    return kEarthRadiusM * kPi / 180.0 * std::cos(deg2rad(lat));
}

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;
};

// Even-odd ray casting in lat/lon space; points exactly on the boundary
// count as inside.
bool point_in_polygon(double lat, double lon, const std::vector<LatLon>& ring);

} // namespace bikevol

#endif
