#ifndef BIKEVOL_ROUTER_HPP
#define BIKEVOL_ROUTER_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bikevol/netgraph.hpp"
#include "bikevol/trips.hpp"

namespace bikevol {

enum class WeightStrategy {
    Length,
    PathPreference,
    SimplifiedPathPreference,
    WeightedLength,
    ClosenessCentrality,
    Unbiased,
    CornerWeighted,
    CornerWeightedLength,
};

const char* to_string(WeightStrategy s);
std::optional<WeightStrategy> parse_strategy(const std::string& s);
std::vector<WeightStrategy> all_strategies();

// Category weights for the path-preference models.
std::map<EdgeCategory, double> default_preference_weights();
std::map<EdgeCategory, double> simplified_preference_weights();

struct StrategyParams {
    std::map<EdgeCategory, double> preference_weights = default_preference_weights();
    // Corner model: edge index -> weight; edges not listed get 1.
    std::unordered_map<std::size_t, double> corner_edge_weights;
    // Required for ClosenessCentrality.
    const std::unordered_map<NodeId, double>* centrality = nullptr;
    double centrality_epsilon = 1e-6;
};

// One weight per edge, indexed like NetworkGraph::edges(); all > 0.
using EdgeWeights = std::vector<double>;

EdgeWeights assign_weights(const NetworkGraph& g, WeightStrategy s,
                           const StrategyParams& params);

struct RoutedTrip {
    std::string id;
    std::vector<NodeId> path;          // full node expansion
    std::vector<std::size_t> edge_path; // edge index per hop, size = path.size()-1
    std::vector<std::size_t> leg_boundaries; // positions of matched nodes in `path`
    std::vector<Timestamp> leg_ts;     // matched timestamp per boundary
};

struct PathResult {
    std::vector<NodeId> nodes;
    std::vector<std::size_t> edges;
    double cost = 0.0;
};

// Minimum-weight path; equal-cost ties (within a small relative window)
// resolve to the lexicographically smallest node-id sequence. Among parallel
// edges the cheaper one is used, ties by lowest ordinal.
std::optional<PathResult> shortest_path(const NetworkGraph& g, const EdgeWeights& w,
                                        NodeId src, NodeId dst);

// Per-leg routing with one remap-and-retry; nullopt when any leg stays
// unroutable (the whole trip is excluded).
std::optional<RoutedTrip> route_trip(const NetworkGraph& g, const EdgeWeights& w,
                                     const MatchedTrip& mt, const RemapTable& remap);

struct RoutingOutcome {
    std::vector<RoutedTrip> routed;        // input order preserved
    std::vector<std::string> unroutable;   // excluded trip ids
};

// Routes trips in parallel (threads = 0 picks the hardware count); output is
// identical regardless of thread count.
RoutingOutcome route_all(const NetworkGraph& g, const EdgeWeights& w,
                         const std::vector<MatchedTrip>& trips,
                         const RemapTable& remap, unsigned threads = 0);

struct SegmentCounts {
    std::vector<std::uint64_t> counts; // indexed like NetworkGraph::edges()
    std::string strategy;
};

SegmentCounts segment_counts(const NetworkGraph& g,
                             const std::vector<RoutedTrip>& routed,
                             const std::string& strategy_label);

void save_segment_counts_geojson(const NetworkGraph& g, const SegmentCounts& counts,
                                 const std::string& path);

struct CornerSpec {
    std::string name;
    std::vector<std::size_t> edges; // the corner's cycle-segment edges
    double target_share = 0.0;      // counter-data share, sums to 1 across corners
};

struct CalibrationResult {
    std::map<std::string, double> weights;       // corner name -> weight
    std::map<std::string, double> achieved_split;
    bool converged = false;
    int iterations = 0;
    double l1_error = 0.0;
};

// Multiplicative coordinate updates on the worst corner until the achieved
// bike-share split is within `tol` (L1) of the target.
CalibrationResult calibrate_corner_weights(const NetworkGraph& g,
                                           const std::vector<MatchedTrip>& trips,
                                           const RemapTable& remap,
                                           const std::vector<CornerSpec>& corners,
                                           double tol = 0.02, int max_iter = 200);

} // namespace bikevol

#endif
