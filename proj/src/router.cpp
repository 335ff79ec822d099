#include "bikevol/router.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <thread>

#include <json.hpp>

namespace bikevol {

using nlohmann::json;

const char* to_string(WeightStrategy s) {
    switch (s) {
        case WeightStrategy::Length: return "length";
        case WeightStrategy::PathPreference: return "path_preference";
        case WeightStrategy::SimplifiedPathPreference: return "simplified_path_preference";
        case WeightStrategy::WeightedLength: return "weighted_length";
        case WeightStrategy::ClosenessCentrality: return "closeness_centrality";
        case WeightStrategy::Unbiased: return "unbiased";
        case WeightStrategy::CornerWeighted: return "corner_weighted";
        case WeightStrategy::CornerWeightedLength: return "corner_weighted_length";
    }
    return "length";
}

std::optional<WeightStrategy> parse_strategy(const std::string& s) {
    for (WeightStrategy w : all_strategies())
        if (s == to_string(w)) return w;
    return std::nullopt;
}

std::vector<WeightStrategy> all_strategies() {
    return {WeightStrategy::Length,
            WeightStrategy::PathPreference,
            WeightStrategy::SimplifiedPathPreference,
            WeightStrategy::WeightedLength,
            WeightStrategy::ClosenessCentrality,
            WeightStrategy::Unbiased,
            WeightStrategy::CornerWeighted,
            WeightStrategy::CornerWeightedLength};
}

std::map<EdgeCategory, double> default_preference_weights() {
    return {{EdgeCategory::cycleway, 0.5},   {EdgeCategory::residential, 0.9},
            {EdgeCategory::lane, 1.0},       {EdgeCategory::unclassified, 1.0},
            {EdgeCategory::secondary, 1.2},  {EdgeCategory::tertiary, 1.2},
            {EdgeCategory::highway97, 3.0},  {EdgeCategory::footpath, 1.0},
            {EdgeCategory::other, 1.0}};
}

std::map<EdgeCategory, double> simplified_preference_weights() {
    std::map<EdgeCategory, double> w;
    for (const auto& [cat, unused] : default_preference_weights()) w[cat] = 1.0;
    w[EdgeCategory::cycleway] = 0.5;
    return w;
}

static double category_weight(const std::map<EdgeCategory, double>& table,
                              EdgeCategory cat) {
    auto it = table.find(cat);
    return it == table.end() ? 1.0 : it->second;
}

EdgeWeights assign_weights(const NetworkGraph& g, WeightStrategy s,
                           const StrategyParams& p) {
    const auto& edges = g.edges();
    EdgeWeights w(edges.size(), 1.0);
    auto spp = simplified_preference_weights();
    switch (s) {
        case WeightStrategy::Length:
            for (std::size_t i = 0; i < edges.size(); ++i) w[i] = edges[i].length_m;
            break;
        case WeightStrategy::PathPreference:
            for (std::size_t i = 0; i < edges.size(); ++i)
                w[i] = category_weight(p.preference_weights, edges[i].category);
            break;
        case WeightStrategy::SimplifiedPathPreference:
            for (std::size_t i = 0; i < edges.size(); ++i)
                w[i] = category_weight(spp, edges[i].category);
            break;
        case WeightStrategy::WeightedLength:
            for (std::size_t i = 0; i < edges.size(); ++i)
                w[i] = edges[i].length_m * category_weight(spp, edges[i].category);
            break;
        case WeightStrategy::ClosenessCentrality: {
            if (!p.centrality)
                throw ConfigError("closeness_centrality strategy needs a centrality table");
            for (std::size_t i = 0; i < edges.size(); ++i) {
                double cu = p.centrality->at(edges[i].u);
                double cv = p.centrality->at(edges[i].v);
                w[i] = 1.0 / (p.centrality_epsilon + 0.5 * (cu + cv));
            }
            break;
        }
        case WeightStrategy::Unbiased:
            break; // all ones
        case WeightStrategy::CornerWeighted:
            for (const auto& [ei, cw] : p.corner_edge_weights) w.at(ei) = cw;
            break;
        case WeightStrategy::CornerWeightedLength:
            for (std::size_t i = 0; i < edges.size(); ++i) w[i] = edges[i].length_m;
            for (const auto& [ei, cw] : p.corner_edge_weights) w.at(ei) *= cw;
            break;
    }
    for (double x : w)
        if (!(x > 0.0)) throw ConfigError("edge weights must be strictly positive");
    return w;
}

static std::vector<double> dijkstra(const NetworkGraph& g, const EdgeWeights& w,
                                    NodeId src) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.nodes().size(), inf);
    using QE = std::pair<double, NodeId>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    dist[g.node_pos(src)] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[g.node_pos(u)]) continue;
        for (const auto& [v, ei] : g.neighbors(u)) {
            double nd = d + w[ei];
            std::size_t vp = g.node_pos(v);
            if (nd < dist[vp]) {
                dist[vp] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist;
}

std::optional<PathResult> shortest_path(const NetworkGraph& g, const EdgeWeights& w,
                                        NodeId src, NodeId dst) {
    if (src == dst) return PathResult{{src}, {}, 0.0};
    std::vector<double> ds = dijkstra(g, w, src);
    double total = ds[g.node_pos(dst)];
    if (!std::isfinite(total)) return std::nullopt;
    std::vector<double> dt = dijkstra(g, w, dst);

    // Forward greedy reconstruction: at each node take the smallest-id
    // neighbor that still lies on a minimum-cost path; this yields the
    // lexicographically smallest node sequence among cost ties.
    double tol = 1e-9 * std::max(1.0, total);
    PathResult res;
    res.nodes.push_back(src);
    std::vector<char> visited(g.nodes().size(), 0);
    visited[g.node_pos(src)] = 1;
    NodeId u = src;
    double cost_so_far = 0.0;
    while (u != dst) {
        bool found = false;
        NodeId best_v = 0;
        std::size_t best_ei = 0;
        double best_w = 0.0;
        for (const auto& [v, ei] : g.neighbors(u)) {
            if (visited[g.node_pos(v)]) continue;
            if (std::fabs(ds[g.node_pos(u)] + w[ei] + dt[g.node_pos(v)] - total) > tol)
                continue;
            bool better;
            if (!found)
                better = true;
            else if (v != best_v)
                better = v < best_v;
            else
                better = w[ei] < best_w ||
                         (w[ei] == best_w &&
                          g.edges()[ei].ordinal < g.edges()[best_ei].ordinal);
            if (better) {
                found = true;
                best_v = v;
                best_ei = ei;
                best_w = w[ei];
            }
        }
        if (!found) return std::nullopt; // cannot happen with positive weights
        res.nodes.push_back(best_v);
        res.edges.push_back(best_ei);
        cost_so_far += best_w;
        visited[g.node_pos(best_v)] = 1;
        u = best_v;
    }
    res.cost = cost_so_far;
    return res;
}

static std::optional<RoutedTrip>
route_nodes(const NetworkGraph& g, const EdgeWeights& w, const std::string& id,
            const std::vector<std::pair<NodeId, Timestamp>>& nodes) {
    RoutedTrip rt;
    rt.id = id;
    rt.path.push_back(nodes.front().first);
    rt.leg_boundaries.push_back(0);
    rt.leg_ts.push_back(nodes.front().second);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        auto leg = shortest_path(g, w, nodes[i - 1].first, nodes[i].first);
        if (!leg) return std::nullopt;
        for (std::size_t k = 1; k < leg->nodes.size(); ++k) {
            rt.path.push_back(leg->nodes[k]);
            rt.edge_path.push_back(leg->edges[k - 1]);
        }
        rt.leg_boundaries.push_back(rt.path.size() - 1);
        rt.leg_ts.push_back(nodes[i].second);
    }
    return rt;
}

std::optional<RoutedTrip> route_trip(const NetworkGraph& g, const EdgeWeights& w,
                                     const MatchedTrip& mt, const RemapTable& remap) {
    std::vector<std::pair<NodeId, Timestamp>> nodes;
    nodes.reserve(mt.matched.size());
    for (const MatchedPoint& mp : mt.matched) nodes.emplace_back(mp.node, mp.ts);
    if (auto rt = route_nodes(g, w, mt.id, nodes)) return rt;

    // retry once with problem nodes remapped; collapse any duplicates the
    // remap introduces, keeping the earliest timestamp
    std::vector<std::pair<NodeId, Timestamp>> remapped;
    for (const auto& [n, ts] : nodes) {
        NodeId r = apply_remap(remap, n);
        if (remapped.empty() || remapped.back().first != r) remapped.emplace_back(r, ts);
    }
    return route_nodes(g, w, mt.id, remapped);
}

RoutingOutcome route_all(const NetworkGraph& g, const EdgeWeights& w,
                         const std::vector<MatchedTrip>& trips, const RemapTable& remap,
                         unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(trips.size(), 1));

    std::vector<std::optional<RoutedTrip>> slots(trips.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= trips.size()) break;
            slots[i] = route_trip(g, w, trips[i], remap);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    RoutingOutcome out;
    for (std::size_t i = 0; i < trips.size(); ++i) {
        if (slots[i])
            out.routed.push_back(std::move(*slots[i]));
        else
            out.unroutable.push_back(trips[i].id);
    }
    return out;
}

SegmentCounts segment_counts(const NetworkGraph& g,
                             const std::vector<RoutedTrip>& routed,
                             const std::string& strategy_label) {
    SegmentCounts sc;
    sc.counts.assign(g.edges().size(), 0);
    sc.strategy = strategy_label;
    for (const RoutedTrip& rt : routed)
        for (std::size_t ei : rt.edge_path) ++sc.counts[ei];
    return sc;
}

void save_segment_counts_geojson(const NetworkGraph& g, const SegmentCounts& sc,
                                 const std::string& path) {
    json features = json::array();
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const GraphEdge& e = edges[i];
        const GraphNode& a = g.node(e.u);
        const GraphNode& b = g.node(e.v);
        json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "LineString"},
                         {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}};
        f["properties"] = {{"u", e.u},
                           {"v", e.v},
                           {"ordinal", e.ordinal},
                           {"count", sc.counts[i]},
                           {"strategy", sc.strategy}};
        features.push_back(std::move(f));
    }
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write counts file: " + path);
    out << doc.dump(2) << "\n";
}

CalibrationResult calibrate_corner_weights(const NetworkGraph& g,
                                           const std::vector<MatchedTrip>& trips,
                                           const RemapTable& remap,
                                           const std::vector<CornerSpec>& corners,
                                           double tol, int max_iter) {
    if (corners.empty()) throw ConfigError("calibration needs at least one corner");
    double target_sum = 0.0;
    for (const CornerSpec& c : corners) {
        if (c.edges.empty())
            throw ConfigError("corner " + c.name + " has no designated edges");
        target_sum += c.target_share;
    }
    if (std::fabs(target_sum - 1.0) > 1e-9)
        throw ConfigError("corner target shares must sum to 1");

    CalibrationResult res;
    for (const CornerSpec& c : corners) res.weights[c.name] = 1.0;

    for (int iter = 0; iter <= max_iter; ++iter) {
        StrategyParams params;
        for (const CornerSpec& c : corners)
            for (std::size_t ei : c.edges)
                params.corner_edge_weights[ei] = res.weights[c.name];
        EdgeWeights w = assign_weights(g, WeightStrategy::CornerWeighted, params);

        std::vector<RoutedTrip> routed;
        for (const MatchedTrip& mt : trips)
            if (auto rt = route_trip(g, w, mt, remap)) routed.push_back(std::move(*rt));
        SegmentCounts sc = segment_counts(g, routed, "corner_weighted");

        double total = 0.0;
        std::vector<double> achieved(corners.size(), 0.0);
        for (std::size_t ci = 0; ci < corners.size(); ++ci) {
            for (std::size_t ei : corners[ci].edges)
                achieved[ci] += double(sc.counts[ei]);
            total += achieved[ci];
        }
        if (total == 0.0) {
            res.converged = false;
            res.iterations = iter;
            return res;
        }
        double l1 = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t ci = 0; ci < corners.size(); ++ci) {
            achieved[ci] /= total;
            res.achieved_split[corners[ci].name] = achieved[ci];
            double err = std::fabs(achieved[ci] - corners[ci].target_share);
            l1 += err;
            if (err > worst_err) {
                worst_err = err;
                worst = ci;
            }
        }
        res.l1_error = l1;
        res.iterations = iter;
        if (l1 <= tol) {
            res.converged = true;
            return res;
        }
        if (iter == max_iter) break;

        double tgt = std::max(corners[worst].target_share, 1e-9);
        double ratio = achieved[worst] / tgt;
        ratio = std::clamp(ratio, 0.5, 2.0);
        res.weights[corners[worst].name] *= ratio;
    }
    res.converged = false;
    return res;
}

} // namespace bikevol
