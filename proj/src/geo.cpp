#include "bikevol/geo.hpp"

namespace bikevol {

static bool on_segment(double px, double py, double ax, double ay, double bx, double by) {
    double cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    if (std::fabs(cross) > 1e-12) return false;
    double dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay);
    double len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
    return dot >= 0.0 && dot <= len2;
}

bool point_in_polygon(double lat, double lon, const std::vector<LatLon>& ring) {
    size_t n = ring.size();
    if (n < 3) return false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if (on_segment(lon, lat, ring[j].lon, ring[j].lat, ring[i].lon, ring[i].lat))
            return true;
    }
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double yi = ring[i].lat, yj = ring[j].lat;
        double xi = ring[i].lon, xj = ring[j].lon;
        if ((yi > lat) != (yj > lat)) {
            double xcross = xi + (lat - yi) / (yj - yi) * (xj - xi);
            if (lon < xcross) inside = !inside;
        }
    }
    return inside;
}

} // namespace bikevol
