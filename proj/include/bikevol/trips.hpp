#ifndef BIKEVOL_TRIPS_HPP
#define BIKEVOL_TRIPS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bikevol/geo.hpp"
#include "bikevol/netgraph.hpp"

namespace bikevol {

// Unix seconds, UTC.
using Timestamp = std::int64_t;

std::optional<Timestamp> parse_rfc3339(const std::string& s);
std::string format_rfc3339(Timestamp t);

struct GpsPoint {
    std::string trip_id;
    Timestamp ts = 0;
    double lat = 0.0;
    double lon = 0.0;
};

struct Trip {
    std::string id;
    std::vector<GpsPoint> points; // chronological
};

struct MatchedPoint {
    NodeId node = 0;
    Timestamp ts = 0;
    double match_distance_m = 0.0;
};

struct MatchedTrip {
    std::string id;
    std::vector<MatchedPoint> matched; // consecutive duplicate nodes collapsed
};

struct CounterSample {
    Timestamp hour_start = 0;
    std::uint64_t count = 0;
    std::string direction; // optional
};

struct CounterSeries {
    std::string counter_id;
    NodeId location_node = 0;
    std::vector<CounterSample> samples; // sorted by hour_start
};

struct CleaningReport {
    std::uint64_t trips_in = 0, trips_out = 0;
    std::uint64_t points_in = 0, points_out = 0;
    std::map<std::string, std::uint64_t> trip_tally;  // reason -> trips removed
    std::map<std::string, std::uint64_t> point_tally; // reason -> points removed
    std::vector<std::pair<std::string, std::string>> dropped_trips; // (id, reason)
    std::uint64_t collapsed_duplicate_nodes = 0; // informational, not a removal

    // Sequential composition: this report's output feeds `next`.
    void chain(const CleaningReport& next);
    bool conserved() const;
    std::string to_json() const;
};

struct CleaningThresholds {
    double min_trip_extent_m = 100.0;   // straight-line hull diameter
    double max_trip_extent_m = 20000.0;
    double min_duration_s = 60.0;
    double max_duration_s = 4.0 * 3600.0;
    double max_leg_speed_kmh = 40.0;    // straight-line speed between fixes
};

// CSV `trip_id,timestamp,lat,lon`, RFC 3339 UTC timestamps.
std::vector<Trip> load_trips(const std::string& path);
void save_trips(const std::vector<Trip>& trips, const std::string& path);

// Trip-level sanity rules (extent/duration/speed windows) plus duplicate
// timestamp removal within trips.
std::pair<std::vector<Trip>, CleaningReport>
pre_clean(std::vector<Trip> trips, const CleaningThresholds& t);

// Drop points outside the boundary ring; on-boundary points are kept.
std::pair<std::vector<Trip>, CleaningReport>
filter_bounds(std::vector<Trip> trips, const std::vector<LatLon>& polygon);

// Nearest-node matching with the distance cutoff and the >=3-point survival
// rule; duplicate-node collapse runs after the survival test.
std::pair<std::vector<MatchedTrip>, CleaningReport>
match_and_filter(const std::vector<Trip>& trips, const NetworkGraph& g,
                 double max_match_m = 150.0);

// Same distance-cutoff and survival rules, expressed on the raw points, so
// the result is still a valid trips file.
std::pair<std::vector<Trip>, CleaningReport>
filter_matchable(const std::vector<Trip>& trips, const NetworkGraph& g,
                 double max_match_m = 150.0);

struct IntervalStats {
    bool defined = false;
    double median_s = 0.0;
    std::map<int, std::uint64_t> histogram; // bucket index (30 s wide) -> count
};
IntervalStats update_interval_stats(const std::vector<Trip>& trips);

// CSV `counter_id,node_id,hour_start,count,direction` (direction optional).
std::vector<CounterSeries> load_counters(const std::string& path);

} // namespace bikevol

#endif
