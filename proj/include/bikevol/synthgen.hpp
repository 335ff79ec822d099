#ifndef BIKEVOL_SYNTHGEN_HPP
#define BIKEVOL_SYNTHGEN_HPP

#include <string>

#include "bikevol/netgraph.hpp"

namespace bikevol {

struct Scenario {
    std::uint64_t seed = 1;
    int grid_rows = 20;
    int grid_cols = 20;
    double spacing_m = 100.0;
    double jitter_m = 3.0;         // breaks grid shortest-path ties
    double origin_lat = 49.88;
    double origin_lon = -119.49;
    int num_trips = 500;
    double noise_sigma_m = 0.0;    // GPS noise
    double sample_interval_s = 0.0; // 0 = one fix per node passage
    double speed_kmh = 15.0;
    int study_days = 91;
    double scale_factor = 10.0;    // counter counts / bike-share passages
    std::string start_date = "2021-06-01";
};

struct ScenarioFiles {
    std::string network;
    std::string trips;
    std::string counters;
    std::string ground_truth;
};

// Writes network.geojson, trips.csv, counters.csv, ground_truth.json into
// out_dir; byte-identical for identical scenarios.
ScenarioFiles generate_scenario(const Scenario& sc, const std::string& out_dir);

} // namespace bikevol

#endif
