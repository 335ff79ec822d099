#include "bikevol/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>

#include <json.hpp>

#include "bikevol/geo.hpp"

namespace bikevol {

using nlohmann::json;

const char* to_string(EdgeCategory c) {
    switch (c) {
        case EdgeCategory::cycleway: return "cycleway";
        case EdgeCategory::residential: return "residential";
        case EdgeCategory::lane: return "lane";
        case EdgeCategory::unclassified: return "unclassified";
        case EdgeCategory::secondary: return "secondary";
        case EdgeCategory::tertiary: return "tertiary";
        case EdgeCategory::highway97: return "highway97";
        case EdgeCategory::footpath: return "footpath";
        case EdgeCategory::other: return "other";
    }
    return "other";
}

std::optional<EdgeCategory> parse_category(const std::string& s) {
    static const std::pair<const char*, EdgeCategory> table[] = {
        {"cycleway", EdgeCategory::cycleway},
        {"residential", EdgeCategory::residential},
        {"lane", EdgeCategory::lane},
        {"unclassified", EdgeCategory::unclassified},
        {"secondary", EdgeCategory::secondary},
        {"tertiary", EdgeCategory::tertiary},
        {"highway97", EdgeCategory::highway97},
        {"footpath", EdgeCategory::footpath},
        {"other", EdgeCategory::other},
    };
    for (const auto& [name, cat] : table)
        if (s == name) return cat;
    return std::nullopt;
}

static std::uint64_t pair_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (u << 32) ^ v;
}

void NetworkGraph::add_node(GraphNode n) {
    if (n.lat < -90.0 || n.lat > 90.0 || n.lon < -180.0 || n.lon > 180.0)
        throw DataError("node " + std::to_string(n.id) + ": coordinates out of range");
    if (!node_index_.emplace(n.id, nodes_.size()).second)
        throw DataError("duplicate node id " + std::to_string(n.id));
    nodes_.push_back(n);
    finalized_ = false;
}

void NetworkGraph::add_edge(NodeId u, NodeId v, double length_m, EdgeCategory cat,
                            std::string name) {
    if (u == v)
        throw DataError("edge " + std::to_string(u) + "-" + std::to_string(v) + ": self loop");
    if (!has_node(u) || !has_node(v))
        throw DataError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                        ": dangling endpoint");
    if (!(length_m > 0.0))
        throw DataError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                        ": non-positive length");
    GraphEdge e;
    e.u = u;
    e.v = v;
    e.length_m = length_m;
    e.category = cat;
    e.name = std::move(name);
    e.ordinal = pair_counts_[pair_key(u, v)]++;
    edges_.push_back(std::move(e));
    finalized_ = false;
}

void NetworkGraph::finalize() {
    adjacency_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const GraphEdge& e = edges_[i];
        adjacency_[node_index_.at(e.u)].emplace_back(e.v, i);
        adjacency_[node_index_.at(e.v)].emplace_back(e.u, i);
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end());

    kd_.clear();
    kd_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        double phi = deg2rad(nodes_[i].lat), lam = deg2rad(nodes_[i].lon);
        KdNode k;
        k.xyz[0] = std::cos(phi) * std::cos(lam);
        k.xyz[1] = std::cos(phi) * std::sin(lam);
        k.xyz[2] = std::sin(phi);
        k.node_pos = i;
        kd_.push_back(k);
    }
    if (!kd_.empty()) kd_build(0, kd_.size(), 0);
    finalized_ = true;
}

void NetworkGraph::kd_build(std::size_t lo, std::size_t hi, int axis) {
    if (hi - lo <= 1) return;
    std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(kd_.begin() + lo, kd_.begin() + mid, kd_.begin() + hi,
                     [axis](const KdNode& a, const KdNode& b) {
                         return a.xyz[axis] < b.xyz[axis];
                     });
    kd_build(lo, mid, (axis + 1) % 3);
    kd_build(mid + 1, hi, (axis + 1) % 3);
}

void NetworkGraph::kd_query(std::size_t lo, std::size_t hi, int axis, const double q[3],
                            double& best_d2, std::size_t& best_pos) const {
    if (lo >= hi) return;
    std::size_t mid = lo + (hi - lo) / 2;
    const KdNode& k = kd_[mid];
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) d2 += (k.xyz[i] - q[i]) * (k.xyz[i] - q[i]);
    NodeId kid = nodes_[k.node_pos].id;
    if (d2 < best_d2 ||
        (d2 == best_d2 && (best_pos == SIZE_MAX || kid < nodes_[best_pos].id))) {
        best_d2 = d2;
        best_pos = k.node_pos;
    }
    double diff = q[axis] - k.xyz[axis];
    int next = (axis + 1) % 3;
    if (diff < 0.0) {
        kd_query(lo, mid, next, q, best_d2, best_pos);
        if (diff * diff <= best_d2) kd_query(mid + 1, hi, next, q, best_d2, best_pos);
    } else {
        kd_query(mid + 1, hi, next, q, best_d2, best_pos);
        if (diff * diff <= best_d2) kd_query(lo, mid, next, q, best_d2, best_pos);
    }
}

const GraphNode& NetworkGraph::node(NodeId id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw DataError("unknown node id " + std::to_string(id));
    return nodes_[it->second];
}

std::size_t NetworkGraph::node_pos(NodeId id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw DataError("unknown node id " + std::to_string(id));
    return it->second;
}

const std::vector<std::pair<NodeId, std::size_t>>& NetworkGraph::neighbors(NodeId id) const {
    return adjacency_[node_pos(id)];
}

std::pair<NodeId, double> NetworkGraph::nearest_node(double lat, double lon) const {
    if (nodes_.empty()) throw DataError("nearest_node on empty graph");
    double phi = deg2rad(lat), lam = deg2rad(lon);
    double q[3] = {std::cos(phi) * std::cos(lam), std::cos(phi) * std::sin(lam),
                   std::sin(phi)};
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_pos = SIZE_MAX;
    kd_query(0, kd_.size(), 0, q, best_d2, best_pos);

    // Chord distance may tie where haversine ties; settle tie-break on the
    // exact metric among candidates at the same chord distance.
    const GraphNode& n = nodes_[best_pos];
    return {n.id, haversine_m(lat, lon, n.lat, n.lon)};
}

std::size_t NetworkGraph::component_count() const {
    std::vector<char> seen(nodes_.size(), 0);
    std::size_t comps = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < nodes_.size(); ++s) {
        if (seen[s]) continue;
        ++comps;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& [nbr, ei] : adjacency_[u]) {
                std::size_t p = node_index_.at(nbr);
                if (!seen[p]) {
                    seen[p] = 1;
                    stack.push_back(p);
                }
            }
        }
    }
    return comps;
}

static double linestring_length_m(const json& coords) {
    double total = 0.0;
    for (std::size_t i = 1; i < coords.size(); ++i) {
        double lon1 = coords[i - 1][0], lat1 = coords[i - 1][1];
        double lon2 = coords[i][0], lat2 = coords[i][1];
        total += haversine_m(lat1, lon1, lat2, lon2);
    }
    return total;
}

NetworkGraph load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open network file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection")
        throw DataError(path + ": not a GeoJSON FeatureCollection");

    NetworkGraph g;
    const json& features = doc.at("features");

    struct PendingEdge {
        NodeId u, v;
        double length_m;
        EdgeCategory cat;
        std::string name;
        std::size_t feature;
    };
    std::vector<PendingEdge> pending;

    for (std::size_t fi = 0; fi < features.size(); ++fi) {
        const json& f = features[fi];
        std::string loc = path + ": feature " + std::to_string(fi);
        try {
            const json& geom = f.at("geometry");
            const json& props = f.at("properties");
            std::string gtype = geom.at("type").get<std::string>();
            if (gtype == "Point") {
                GraphNode n;
                n.id = props.at("id").get<NodeId>();
                n.lon = geom.at("coordinates")[0].get<double>();
                n.lat = geom.at("coordinates")[1].get<double>();
                g.add_node(n);
            } else if (gtype == "LineString") {
                PendingEdge e;
                e.u = props.at("u").get<NodeId>();
                e.v = props.at("v").get<NodeId>();
                e.cat = EdgeCategory::other;
                auto cat = parse_category(props.at("category").get<std::string>());
                if (!cat) throw DataError("unknown category");
                e.cat = *cat;
                if (props.contains("length_m"))
                    e.length_m = props.at("length_m").get<double>();
                else
                    e.length_m = linestring_length_m(geom.at("coordinates"));
                if (props.contains("name") && props.at("name").is_string())
                    e.name = props.at("name").get<std::string>();
                e.feature = fi;
                pending.push_back(std::move(e));
            } else {
                throw DataError("unsupported geometry type " + gtype);
            }
        } catch (const json::exception& e) {
            throw DataError(loc + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError(loc + ": " + e.what());
        }
    }
    for (const auto& e : pending) {
        try {
            g.add_edge(e.u, e.v, e.length_m, e.cat, e.name);
        } catch (const DataError& ex) {
            throw DataError(path + ": feature " + std::to_string(e.feature) + ": " +
                            ex.what());
        }
    }
    g.finalize();
    return g;
}

void save_network(const NetworkGraph& g, const std::string& path) {
    json features = json::array();
    for (const GraphNode& n : g.nodes()) {
        json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"}, {"coordinates", {n.lon, n.lat}}};
        f["properties"] = {{"id", n.id}};
        features.push_back(std::move(f));
    }
    for (const GraphEdge& e : g.edges()) {
        const GraphNode& a = g.node(e.u);
        const GraphNode& b = g.node(e.v);
        json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "LineString"},
                         {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}};
        json props = {{"u", e.u},
                      {"v", e.v},
                      {"length_m", e.length_m},
                      {"category", to_string(e.category)}};
        if (!e.name.empty()) props["name"] = e.name;
        f["properties"] = std::move(props);
        features.push_back(std::move(f));
    }
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write network file: " + path);
    out << doc.dump(2) << "\n";
}

RemapTable load_remap(const std::string& path, const NetworkGraph& g) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open remap file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("from_node,to_node", 0) != 0)
        throw DataError(path + ": expected header `from_node,to_node`");
    RemapTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string loc = path + ":" + std::to_string(lineno);
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw DataError(loc + ": missing comma");
        NodeId from, to;
        try {
            from = std::stoull(line.substr(0, comma));
            to = std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw DataError(loc + ": bad node id");
        }
        if (!g.has_node(to))
            throw DataError(loc + ": replacement node " + std::to_string(to) +
                            " not in graph");
        if (!t.emplace(from, to).second)
            throw DataError(loc + ": duplicate key " + std::to_string(from));
    }
    for (const auto& [from, to] : t)
        if (t.count(to))
            throw DataError(path + ": remap chain via node " + std::to_string(to));
    return t;
}

NodeId apply_remap(const RemapTable& t, NodeId node) {
    auto it = t.find(node);
    return it == t.end() ? node : it->second;
}

std::unordered_map<NodeId, double> closeness_centrality(const NetworkGraph& g) {
    const auto& nodes = g.nodes();
    std::unordered_map<NodeId, double> cc;
    cc.reserve(nodes.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes.size());

    for (const GraphNode& src : nodes) {
        std::fill(dist.begin(), dist.end(), inf);
        using QE = std::pair<double, NodeId>;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        dist[g.node_pos(src.id)] = 0.0;
        pq.emplace(0.0, src.id);
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            std::size_t up = g.node_pos(u);
            if (d > dist[up]) continue;
            for (const auto& [v, ei] : g.neighbors(u)) {
                double nd = d + g.edges()[ei].length_m;
                std::size_t vp = g.node_pos(v);
                if (nd < dist[vp]) {
                    dist[vp] = nd;
                    pq.emplace(nd, v);
                }
            }
        }
        double sum = 0.0;
        std::size_t reached = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (dist[i] < inf && dist[i] > 0.0) {
                sum += dist[i];
                ++reached;
            }
        }
        cc[src.id] = (reached == 0 || sum == 0.0) ? 0.0 : double(reached) / sum;
    }
    return cc;
}

} // namespace bikevol
