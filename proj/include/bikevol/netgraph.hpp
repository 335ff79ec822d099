#ifndef BIKEVOL_NETGRAPH_HPP
#define BIKEVOL_NETGRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bikevol/errors.hpp"

namespace bikevol {

using NodeId = std::uint64_t;

enum class EdgeCategory {
    cycleway,
    residential,
    lane,
    unclassified,
    secondary,
    tertiary,
    highway97,
    footpath,
    other,
};

const char* to_string(EdgeCategory c);
std::optional<EdgeCategory> parse_category(const std::string& s);

struct GraphNode {
    NodeId id = 0;
    double lat = 0.0;
    double lon = 0.0;
};

struct GraphEdge {
    NodeId u = 0;
    NodeId v = 0;
    double length_m = 0.0;
    EdgeCategory category = EdgeCategory::other;
    std::string name;        // may be empty
    std::uint32_t ordinal = 0; // disambiguates parallel edges on the same (u,v)
};

// Problem node -> replacement node. Replacements must exist in the graph
// and never themselves appear as keys.
using RemapTable = std::unordered_map<NodeId, NodeId>;

class NetworkGraph {
public:
    NetworkGraph() = default;

    void add_node(GraphNode n);                 // throws DataError on duplicate id
    void add_edge(NodeId u, NodeId v, double length_m, EdgeCategory cat,
                  std::string name = {});      // throws DataError on bad endpoint/length
    void finalize();                            // builds adjacency + spatial index

    const std::vector<GraphNode>& nodes() const { return nodes_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const GraphNode& node(NodeId id) const;
    bool has_node(NodeId id) const { return node_index_.count(id) != 0; }
    std::size_t node_pos(NodeId id) const;      // dense index into nodes()

    // (neighbor node id, edge index) pairs; parallel edges appear once each.
    const std::vector<std::pair<NodeId, std::size_t>>& neighbors(NodeId id) const;

    // Exact nearest node by haversine distance; ties -> lowest NodeId.
    std::pair<NodeId, double> nearest_node(double lat, double lon) const;

    std::size_t component_count() const;

private:
    std::vector<GraphNode> nodes_;
    std::vector<GraphEdge> edges_;
    std::unordered_map<NodeId, std::size_t> node_index_;
    std::vector<std::vector<std::pair<NodeId, std::size_t>>> adjacency_;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_counts_; // parallel-edge ordinals

    // k-d tree over unit-sphere cartesian coordinates; chord distance is
    // monotone in great-circle distance, so nearest-by-chord is exact.
    struct KdNode {
        double xyz[3];
        std::size_t node_pos;
    };
    std::vector<KdNode> kd_;
    bool finalized_ = false;

    void kd_build(std::size_t lo, std::size_t hi, int axis);
    void kd_query(std::size_t lo, std::size_t hi, int axis, const double q[3],
                  double& best_d2, std::size_t& best_pos) const;
};

// GeoJSON FeatureCollection: Point features {id}, LineString features
// {u, v, length_m?, category, name?}.
NetworkGraph load_network(const std::string& path);
void save_network(const NetworkGraph& g, const std::string& path);

// CSV with header `from_node,to_node`.
RemapTable load_remap(const std::string& path, const NetworkGraph& g);

NodeId apply_remap(const RemapTable& t, NodeId node);

// CC(v) = (n-1) / sum of length-weighted shortest-path distances within v's
// component; isolated nodes get 0.
std::unordered_map<NodeId, double> closeness_centrality(const NetworkGraph& g);

} // namespace bikevol

#endif
