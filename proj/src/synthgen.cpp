#include "bikevol/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "bikevol/rng.hpp"
#include "bikevol/router.hpp"
#include "bikevol/trips.hpp"

namespace bikevol {

using nlohmann::json;

namespace {

struct CounterDef {
    std::string id;
    NodeId u, v;  // the counted edge
    NodeId node;  // reported location node
};

NodeId grid_id(int r, int c, int cols) { return NodeId(r) * cols + c + 1; }

EdgeCategory horizontal_category(int r, int rows) {
    if (r == 0 || r == rows - 1) return EdgeCategory::cycleway;
    return r % 2 ? EdgeCategory::residential : EdgeCategory::lane;
}

EdgeCategory vertical_category(int c, int cols) {
    if (c == 0 || c == cols - 1) return EdgeCategory::cycleway;
    if (c == cols / 2) return EdgeCategory::tertiary;
    return c % 2 ? EdgeCategory::residential : EdgeCategory::unclassified;
}

} // namespace

ScenarioFiles generate_scenario(const Scenario& sc, const std::string& out_dir) {
    if (sc.grid_rows < 2 || sc.grid_cols < 2)
        throw ConfigError("scenario grid must be at least 2x2");
    if (sc.spacing_m <= 0 || sc.num_trips <= 0 || sc.study_days <= 0 ||
        sc.scale_factor <= 0 || sc.speed_kmh <= 0 || sc.noise_sigma_m < 0 ||
        sc.sample_interval_s < 0)
        throw ConfigError("invalid scenario parameters");

    SplitMix64 rng(sc.seed);
    const double mlat = meters_per_deg_lat();
    const double mlon = meters_per_deg_lon(sc.origin_lat);

    NetworkGraph g;
    for (int r = 0; r < sc.grid_rows; ++r)
        for (int c = 0; c < sc.grid_cols; ++c) {
            double dy = rng.uniform(-sc.jitter_m, sc.jitter_m);
            double dx = rng.uniform(-sc.jitter_m, sc.jitter_m);
            GraphNode n;
            n.id = grid_id(r, c, sc.grid_cols);
            n.lat = sc.origin_lat + (r * sc.spacing_m + dy) / mlat;
            n.lon = sc.origin_lon + (c * sc.spacing_m + dx) / mlon;
            g.add_node(n);
        }
    auto edge_len = [&](NodeId a, NodeId b) {
        const GraphNode& na = g.node(a);
        const GraphNode& nb = g.node(b);
        return haversine_m(na.lat, na.lon, nb.lat, nb.lon);
    };
    for (int r = 0; r < sc.grid_rows; ++r)
        for (int c = 0; c < sc.grid_cols; ++c) {
            if (c + 1 < sc.grid_cols) {
                NodeId a = grid_id(r, c, sc.grid_cols), b = grid_id(r, c + 1, sc.grid_cols);
                g.add_edge(a, b, edge_len(a, b), horizontal_category(r, sc.grid_rows));
            }
            if (r + 1 < sc.grid_rows) {
                NodeId a = grid_id(r, c, sc.grid_cols), b = grid_id(r + 1, c, sc.grid_cols);
                g.add_edge(a, b, edge_len(a, b), vertical_category(c, sc.grid_cols));
            }
        }
    g.finalize();

    std::map<std::pair<NodeId, NodeId>, std::size_t> edge_index;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const GraphEdge& e = g.edges()[i];
        edge_index[{std::min(e.u, e.v), std::max(e.u, e.v)}] = i;
    }

    int rows = sc.grid_rows, cols = sc.grid_cols;
    std::vector<CounterDef> counters = {
        {"nw", grid_id(0, 0, cols), grid_id(0, 1, cols), grid_id(0, 0, cols)},
        {"ne", grid_id(0, cols - 1, cols), grid_id(1, cols - 1, cols),
         grid_id(0, cols - 1, cols)},
        {"sw", grid_id(rows - 1, 0, cols), grid_id(rows - 2, 0, cols),
         grid_id(rows - 1, 0, cols)},
        {"se", grid_id(rows - 1, cols - 1, cols), grid_id(rows - 1, cols - 2, cols),
         grid_id(rows - 1, cols - 1, cols)},
    };

    EdgeWeights length_w(g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        length_w[i] = g.edges()[i].length_m;

    auto day0 = parse_rfc3339(sc.start_date + "T00:00:00Z");
    if (!day0) throw ConfigError("bad scenario start_date: " + sc.start_date);

    const double speed_mps = sc.speed_kmh / 3.6;
    const double min_extent = std::max(150.0, 2.5 * sc.spacing_m);

    std::vector<std::uint64_t> true_counts(g.edges().size(), 0);
    std::map<std::string, std::vector<NodeId>> true_routes;
    // counter id -> hour_start -> traversals
    std::map<std::string, std::map<Timestamp, std::uint64_t>> counter_hours;
    std::map<std::string, std::uint64_t> counter_true;
    for (const CounterDef& cd : counters) counter_true[cd.id] = 0;

    std::ofstream trips_out(out_dir + "/trips.csv");
    if (!trips_out) throw DataError("cannot write " + out_dir + "/trips.csv");
    trips_out << "trip_id,timestamp,lat,lon\n";
    char buf[64];

    const std::size_t n_nodes = g.nodes().size();
    for (int ti = 0; ti < sc.num_trips; ++ti) {
        std::vector<NodeId> route;
        for (int attempt = 0; attempt < 200; ++attempt) {
            NodeId o = g.nodes()[rng.next_below(n_nodes)].id;
            NodeId d = g.nodes()[rng.next_below(n_nodes)].id;
            if (o == d) continue;
            const GraphNode& no = g.node(o);
            const GraphNode& nd = g.node(d);
            if (haversine_m(no.lat, no.lon, nd.lat, nd.lon) < min_extent) continue;
            auto path = shortest_path(g, length_w, o, d);
            if (!path || path->nodes.size() < 4) continue;
            route = path->nodes;
            break;
        }
        if (route.empty()) throw DataError("scenario: could not sample a feasible trip");

        char idbuf[16];
        std::snprintf(idbuf, sizeof idbuf, "t%05d", ti + 1);
        std::string trip_id = idbuf;
        true_routes[trip_id] = route;

        // cumulative arc length and node arrival offsets
        std::vector<double> cum{0.0};
        for (std::size_t i = 1; i < route.size(); ++i)
            cum.push_back(cum.back() + edge_len(route[i - 1], route[i]));
        for (std::size_t i = 1; i < route.size(); ++i) {
            std::size_t ei = edge_index.at(
                {std::min(route[i - 1], route[i]), std::max(route[i - 1], route[i])});
            ++true_counts[ei];
            for (const CounterDef& cd : counters) {
                if ((route[i - 1] == cd.u && route[i] == cd.v) ||
                    (route[i - 1] == cd.v && route[i] == cd.u)) {
                    ++counter_true[cd.id];
                    // traversal hour from the start-of-edge arrival time, below
                }
            }
        }

        Timestamp start = *day0 + Timestamp(rng.next_below(std::uint64_t(sc.study_days))) * 86400 +
                          6 * 3600 + Timestamp(rng.next_below(14 * 3600));

        // counter hourly tallies use exact traversal times
        for (std::size_t i = 1; i < route.size(); ++i)
            for (const CounterDef& cd : counters)
                if ((route[i - 1] == cd.u && route[i] == cd.v) ||
                    (route[i - 1] == cd.v && route[i] == cd.u)) {
                    Timestamp at = start + Timestamp(std::llround(cum[i - 1] / speed_mps));
                    Timestamp hour = at - (at % 3600);
                    ++counter_hours[cd.id][hour];
                }

        auto emit = [&](Timestamp ts, double lat, double lon) {
            double nlat = lat, nlon = lon;
            if (sc.noise_sigma_m > 0.0) {
                nlat += rng.normal(0.0, sc.noise_sigma_m) / mlat;
                nlon += rng.normal(0.0, sc.noise_sigma_m) / mlon;
            }
            std::snprintf(buf, sizeof buf, "%.7f,%.7f", nlat, nlon);
            trips_out << trip_id << ',' << format_rfc3339(ts) << ',' << buf << '\n';
        };

        if (sc.sample_interval_s <= 0.0) {
            // one fix per node passage
            for (std::size_t i = 0; i < route.size(); ++i) {
                const GraphNode& n = g.node(route[i]);
                Timestamp ts = start + Timestamp(std::llround(cum[i] / speed_mps));
                emit(ts, n.lat, n.lon);
            }
        } else {
            double total_len = cum.back();
            double duration = total_len / speed_mps;
            for (double off = 0.0;; off += sc.sample_interval_s) {
                bool last = off >= duration;
                double dist = last ? total_len : off * speed_mps;
                // locate position along the route polyline
                std::size_t seg = 1;
                while (seg + 1 < cum.size() && cum[seg] < dist) ++seg;
                const GraphNode& a = g.node(route[seg - 1]);
                const GraphNode& b = g.node(route[seg]);
                double seg_len = cum[seg] - cum[seg - 1];
                double f = seg_len > 0 ? (dist - cum[seg - 1]) / seg_len : 0.0;
                f = std::clamp(f, 0.0, 1.0);
                Timestamp ts = start + Timestamp(std::llround(last ? duration : off));
                emit(ts, a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon));
                if (last) break;
            }
        }
    }
    trips_out.close();

    save_network(g, out_dir + "/network.geojson");

    std::ofstream counters_out(out_dir + "/counters.csv");
    if (!counters_out) throw DataError("cannot write " + out_dir + "/counters.csv");
    counters_out << "counter_id,node_id,hour_start,count,direction\n";
    for (const CounterDef& cd : counters)
        for (const auto& [hour, n] : counter_hours[cd.id])
            counters_out << cd.id << ',' << cd.node << ',' << format_rfc3339(hour) << ','
                         << std::llround(double(n) * sc.scale_factor) << ",\n";
    counters_out.close();

    json gt;
    gt["scale_factor"] = sc.scale_factor;
    gt["study_days"] = sc.study_days;
    gt["seed"] = sc.seed;
    json jcounters = json::object();
    double total_true = 0.0;
    for (const CounterDef& cd : counters) total_true += double(counter_true[cd.id]);
    for (const CounterDef& cd : counters) {
        jcounters[cd.id] = {{"u", cd.u},
                            {"v", cd.v},
                            {"node", cd.node},
                            {"true_bikeshare_traversals", counter_true[cd.id]},
                            {"true_share", total_true > 0
                                               ? double(counter_true[cd.id]) / total_true
                                               : 0.0}};
    }
    gt["counters"] = std::move(jcounters);
    json jedges = json::array();
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const GraphEdge& e = g.edges()[i];
        jedges.push_back({e.u, e.v, e.ordinal, true_counts[i]});
    }
    gt["edge_counts"] = std::move(jedges);
    json jroutes = json::object();
    for (const auto& [id, route] : true_routes) jroutes[id] = route;
    gt["routes"] = std::move(jroutes);

    std::ofstream gt_out(out_dir + "/ground_truth.json");
    if (!gt_out) throw DataError("cannot write " + out_dir + "/ground_truth.json");
    gt_out << gt.dump(2) << "\n";

    return ScenarioFiles{out_dir + "/network.geojson", out_dir + "/trips.csv",
                         out_dir + "/counters.csv", out_dir + "/ground_truth.json"};
}

} // namespace bikevol
