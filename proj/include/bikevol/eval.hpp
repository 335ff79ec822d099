#ifndef BIKEVOL_EVAL_HPP
#define BIKEVOL_EVAL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bikevol/router.hpp"
#include "bikevol/stats.hpp"

namespace bikevol {

struct LegSpeed {
    std::string trip_id;
    std::size_t leg = 0;
    double length_m = 0.0;
    double dt_s = 0.0;
    double speed_kmh = 0.0; // +inf when dt == 0 and length > 0
    bool defined = true;    // false when dt == 0
};

std::vector<LegSpeed> leg_speeds(const RoutedTrip& routed, const NetworkGraph& g);

struct SpeedReport {
    double threshold_kmh = 22.5;
    std::uint64_t legs_total = 0;
    std::uint64_t legs_feasible = 0; // speed <= threshold; dt==0 legs infeasible
    std::optional<double> fraction;  // absent when legs_total == 0
};

SpeedReport speed_feasibility(const std::vector<LegSpeed>& legs,
                              double threshold_kmh = 22.5);

// Upper Tukey fence (Q3 + 1.5 IQR) of the leg-speed distribution, capped at
// 40 km/h; needs at least 20 defined legs.
double derive_speed_threshold(const std::vector<LegSpeed>& legs,
                              double cap_kmh = 40.0);

// Ordered location -> share; shares sum to 1 when total > 0.
struct SplitVector {
    std::vector<std::pair<std::string, double>> shares;
};

SplitVector counter_split(const std::vector<std::pair<std::string, double>>& totals);

// Bike-share totals at each location's edge set, from segment counts.
SplitVector counter_split(const SegmentCounts& counts,
                          const std::vector<std::pair<std::string, std::vector<std::size_t>>>&
                              location_edges);

double split_distance(const SplitVector& a, const SplitVector& b);

using RegressionResult = OlsResult;

RegressionResult weekly_regression(const std::vector<double>& weekly_bikeshare,
                                   const std::vector<double>& weekly_counter);

// ISO-8601 year*100 + week for a UTC timestamp.
int iso_week_key(Timestamp ts);

std::array<std::uint64_t, 24> hourly_profile(const std::vector<Timestamp>& events,
                                             int utc_offset_hours = 0);

// Traversal counts of named edge sets (e.g. highway crossing points).
std::map<std::string, std::uint64_t>
crossing_report(const std::vector<RoutedTrip>& routed,
                const std::vector<std::pair<std::string, std::vector<std::size_t>>>&
                    crossing_edges);

struct StrategyScores {
    std::string label;
    std::optional<double> speed_fraction;
    double split_dist = 0.0;
    RegressionResult regression;
};

struct ModelRanking {
    std::vector<std::string> speed_top3;
    std::vector<std::string> split_top3;
    std::vector<std::string> regression_top3;
    std::vector<std::string> visual_top3; // empty when no visual input
    std::string aggregate;
};

// visual_ordinals: operator-supplied ranking (label -> ordinal, 1 = best);
// empty map drops the visual criterion.
ModelRanking rank_models(const std::vector<StrategyScores>& scores,
                         const std::map<std::string, int>& visual_ordinals = {});

} // namespace bikevol

#endif
