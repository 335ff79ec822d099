#include "bikevol/trips.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bikevol {

using nlohmann::json;

// days since 1970-01-01 for a civil date (Howard Hinnant's algorithm)
static std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::optional<Timestamp> parse_rfc3339(const std::string& s) {
    int y, mo, d, h, mi, sec;
    char tz;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec,
                    &tz) != 7)
        return std::nullopt;
    if (tz != 'Z' || s.size() != 20) return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60)
        return std::nullopt;
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
}

std::string format_rfc3339(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    // civil_from_days, same source
    std::int64_t z = days + 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    unsigned d = doy - (153 * mp + 2) / 5 + 1;
    unsigned m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem / 60 % 60), static_cast<long long>(rem % 60));
    return buf;
}

void CleaningReport::chain(const CleaningReport& next) {
    trips_out = next.trips_out;
    points_out = next.points_out;
    for (const auto& [k, v] : next.trip_tally) trip_tally[k] += v;
    for (const auto& [k, v] : next.point_tally) point_tally[k] += v;
    dropped_trips.insert(dropped_trips.end(), next.dropped_trips.begin(),
                         next.dropped_trips.end());
    collapsed_duplicate_nodes += next.collapsed_duplicate_nodes;
}

bool CleaningReport::conserved() const {
    std::uint64_t tsum = 0, psum = 0;
    for (const auto& [k, v] : trip_tally) tsum += v;
    for (const auto& [k, v] : point_tally) psum += v;
    return trips_in == trips_out + tsum && points_in == points_out + psum;
}

std::string CleaningReport::to_json() const {
    json j;
    j["trips_in"] = trips_in;
    j["trips_out"] = trips_out;
    j["points_in"] = points_in;
    j["points_out"] = points_out;
    j["trip_tally"] = trip_tally;
    j["point_tally"] = point_tally;
    j["collapsed_duplicate_nodes"] = collapsed_duplicate_nodes;
    json dropped = json::array();
    for (const auto& [id, reason] : dropped_trips)
        dropped.push_back({{"trip_id", id}, {"reason", reason}});
    j["dropped_trips"] = std::move(dropped);
    return j.dump(2);
}

static std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Trip> load_trips(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trips file: " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) !=
        std::vector<std::string>{"trip_id", "timestamp", "lat", "lon"})
        throw DataError(path + ": expected header `trip_id,timestamp,lat,lon`");

    std::vector<Trip> trips;
    std::unordered_map<std::string, std::size_t> index;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string loc = path + ":" + std::to_string(lineno);
        auto cols = split_csv(line);
        if (cols.size() != 4) throw DataError(loc + ": expected 4 columns");
        GpsPoint p;
        p.trip_id = cols[0];
        if (p.trip_id.empty()) throw DataError(loc + ": empty trip_id");
        auto ts = parse_rfc3339(cols[1]);
        if (!ts) throw DataError(loc + ": bad timestamp `" + cols[1] + "`");
        p.ts = *ts;
        try {
            p.lat = std::stod(cols[2]);
            p.lon = std::stod(cols[3]);
        } catch (const std::exception&) {
            throw DataError(loc + ": bad coordinate");
        }
        if (p.lat < -90 || p.lat > 90 || p.lon < -180 || p.lon > 180)
            throw DataError(loc + ": coordinate out of range");
        auto [it, fresh] = index.emplace(p.trip_id, trips.size());
        if (fresh) trips.push_back(Trip{p.trip_id, {}});
        trips[it->second].points.push_back(std::move(p));
    }
    for (Trip& t : trips)
        std::stable_sort(t.points.begin(), t.points.end(),
                         [](const GpsPoint& a, const GpsPoint& b) { return a.ts < b.ts; });
    return trips;
}

void save_trips(const std::vector<Trip>& trips, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write trips file: " + path);
    out << "trip_id,timestamp,lat,lon\n";
    char buf[64];
    for (const Trip& t : trips)
        for (const GpsPoint& p : t.points) {
            std::snprintf(buf, sizeof buf, "%.7f,%.7f", p.lat, p.lon);
            out << t.id << ',' << format_rfc3339(p.ts) << ',' << buf << '\n';
        }
}

static std::uint64_t count_points(const std::vector<Trip>& trips) {
    std::uint64_t n = 0;
    for (const Trip& t : trips) n += t.points.size();
    return n;
}

std::pair<std::vector<Trip>, CleaningReport>
pre_clean(std::vector<Trip> trips, const CleaningThresholds& th) {
    CleaningReport rep;
    rep.trips_in = trips.size();
    rep.points_in = count_points(trips);

    std::vector<Trip> out;
    out.reserve(trips.size());
    for (Trip& t : trips) {
        // duplicate timestamps: keep the first occurrence
        std::vector<GpsPoint> pts;
        pts.reserve(t.points.size());
        for (GpsPoint& p : t.points) {
            if (!pts.empty() && pts.back().ts == p.ts)
                ++rep.point_tally["dup_ts"];
            else
                pts.push_back(std::move(p));
        }
        t.points = std::move(pts);

        std::string reason;
        double extent = 0.0;
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j)
                extent = std::max(extent,
                                  haversine_m(t.points[i].lat, t.points[i].lon,
                                              t.points[j].lat, t.points[j].lon));
        double duration = t.points.empty()
                              ? 0.0
                              : double(t.points.back().ts - t.points.front().ts);
        double max_speed = 0.0;
        for (std::size_t i = 1; i < t.points.size(); ++i) {
            double d = haversine_m(t.points[i - 1].lat, t.points[i - 1].lon,
                                   t.points[i].lat, t.points[i].lon);
            double dt = double(t.points[i].ts - t.points[i - 1].ts);
            if (dt > 0) max_speed = std::max(max_speed, d / dt * 3.6);
        }

        if (extent < th.min_trip_extent_m)
            reason = "extent_below_min";
        else if (extent > th.max_trip_extent_m)
            reason = "extent_above_max";
        else if (duration < th.min_duration_s)
            reason = "duration_below_min";
        else if (duration > th.max_duration_s)
            reason = "duration_above_max";
        else if (max_speed > th.max_leg_speed_kmh)
            reason = "overspeed";

        if (reason.empty()) {
            out.push_back(std::move(t));
        } else {
            ++rep.trip_tally[reason];
            rep.point_tally[reason] += t.points.size();
            rep.dropped_trips.emplace_back(t.id, reason);
        }
    }
    rep.trips_out = out.size();
    rep.points_out = count_points(out);
    return {std::move(out), std::move(rep)};
}

std::pair<std::vector<Trip>, CleaningReport>
filter_bounds(std::vector<Trip> trips, const std::vector<LatLon>& polygon) {
    if (polygon.size() < 3) throw ConfigError("boundary polygon needs >= 3 vertices");
    CleaningReport rep;
    rep.trips_in = trips.size();
    rep.points_in = count_points(trips);

    std::vector<Trip> out;
    out.reserve(trips.size());
    for (Trip& t : trips) {
        std::vector<GpsPoint> kept;
        kept.reserve(t.points.size());
        for (GpsPoint& p : t.points) {
            if (point_in_polygon(p.lat, p.lon, polygon))
                kept.push_back(std::move(p));
            else
                ++rep.point_tally["out_of_bounds"];
        }
        if (kept.empty()) {
            ++rep.trip_tally["out_of_bounds"];
            rep.dropped_trips.emplace_back(t.id, "out_of_bounds");
        } else {
            t.points = std::move(kept);
            out.push_back(std::move(t));
        }
    }
    rep.trips_out = out.size();
    rep.points_out = count_points(out);
    return {std::move(out), std::move(rep)};
}

// shared survival rules: distance cutoff then the >=3-point test;
// returns indices of surviving raw points plus their matches
static std::vector<std::pair<std::size_t, MatchedPoint>>
match_survivors(const Trip& t, const NetworkGraph& g, double max_match_m,
                CleaningReport& rep) {
    std::vector<std::pair<std::size_t, MatchedPoint>> survivors;
    survivors.reserve(t.points.size());
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        const GpsPoint& p = t.points[i];
        auto [node, dist] = g.nearest_node(p.lat, p.lon);
        if (dist > max_match_m)
            ++rep.point_tally["match_distance"];
        else
            survivors.emplace_back(i, MatchedPoint{node, p.ts, dist});
    }
    if (survivors.size() < 3) {
        ++rep.trip_tally["too_few_points"];
        rep.point_tally["too_few_points"] += survivors.size();
        rep.dropped_trips.emplace_back(t.id, "too_few_points");
        survivors.clear();
    }
    return survivors;
}

std::pair<std::vector<MatchedTrip>, CleaningReport>
match_and_filter(const std::vector<Trip>& trips, const NetworkGraph& g,
                 double max_match_m) {
    CleaningReport rep;
    rep.trips_in = trips.size();
    rep.points_in = count_points(trips);

    std::vector<MatchedTrip> out;
    out.reserve(trips.size());
    for (const Trip& t : trips) {
        auto survivors = match_survivors(t, g, max_match_m, rep);
        if (survivors.empty()) continue;
        rep.points_out += survivors.size();

        MatchedTrip mt;
        mt.id = t.id;
        for (auto& [idx, mp] : survivors) {
            if (!mt.matched.empty() && mt.matched.back().node == mp.node)
                ++rep.collapsed_duplicate_nodes; // earliest timestamp already kept
            else
                mt.matched.push_back(mp);
        }
        out.push_back(std::move(mt));
    }
    rep.trips_out = out.size();
    return {std::move(out), std::move(rep)};
}

std::pair<std::vector<Trip>, CleaningReport>
filter_matchable(const std::vector<Trip>& trips, const NetworkGraph& g,
                 double max_match_m) {
    CleaningReport rep;
    rep.trips_in = trips.size();
    rep.points_in = count_points(trips);

    std::vector<Trip> out;
    out.reserve(trips.size());
    for (const Trip& t : trips) {
        auto survivors = match_survivors(t, g, max_match_m, rep);
        if (survivors.empty()) continue;
        Trip kept;
        kept.id = t.id;
        for (const auto& [idx, mp] : survivors) kept.points.push_back(t.points[idx]);
        rep.points_out += kept.points.size();
        out.push_back(std::move(kept));
    }
    rep.trips_out = out.size();
    return {std::move(out), std::move(rep)};
}

IntervalStats update_interval_stats(const std::vector<Trip>& trips) {
    std::vector<double> deltas;
    IntervalStats st;
    for (const Trip& t : trips)
        for (std::size_t i = 1; i < t.points.size(); ++i) {
            double d = double(t.points[i].ts - t.points[i - 1].ts);
            deltas.push_back(d);
            ++st.histogram[int(d / 30.0)];
        }
    if (deltas.empty()) return st;
    st.defined = true;
    std::sort(deltas.begin(), deltas.end());
    std::size_t n = deltas.size();
    st.median_s = n % 2 ? deltas[n / 2] : 0.5 * (deltas[n / 2 - 1] + deltas[n / 2]);
    return st;
}

std::vector<CounterSeries> load_counters(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open counters file: " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) !=
        std::vector<std::string>{"counter_id", "node_id", "hour_start", "count",
                                 "direction"})
        throw DataError(path +
                        ": expected header `counter_id,node_id,hour_start,count,direction`");
    std::vector<CounterSeries> series;
    std::unordered_map<std::string, std::size_t> index;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string loc = path + ":" + std::to_string(lineno);
        auto cols = split_csv(line);
        if (cols.size() != 5) throw DataError(loc + ": expected 5 columns");
        if (cols[0].empty()) throw DataError(loc + ": empty counter_id");
        auto ts = parse_rfc3339(cols[2]);
        if (!ts) throw DataError(loc + ": bad timestamp `" + cols[2] + "`");
        if (!cols[3].empty() && cols[3][0] == '-')
            throw DataError(loc + ": negative count");
        CounterSample s;
        s.hour_start = *ts;
        NodeId node;
        try {
            node = std::stoull(cols[1]);
            s.count = std::stoull(cols[3]);
        } catch (const std::exception&) {
            throw DataError(loc + ": bad numeric field");
        }
        s.direction = cols[4];
        auto [it, fresh] = index.emplace(cols[0], series.size());
        if (fresh) series.push_back(CounterSeries{cols[0], node, {}});
        if (series[it->second].location_node != node)
            throw DataError(loc + ": counter " + cols[0] + " at conflicting nodes");
        series[it->second].samples.push_back(std::move(s));
    }
    for (CounterSeries& cs : series)
        std::sort(cs.samples.begin(), cs.samples.end(),
                  [](const CounterSample& a, const CounterSample& b) {
                      return a.hour_start < b.hour_start;
                  });
    return series;
}

} // namespace bikevol
