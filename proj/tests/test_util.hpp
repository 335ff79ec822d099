#ifndef BIKEVOL_TEST_UTIL_HPP
#define BIKEVOL_TEST_UTIL_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "bikevol/netgraph.hpp"

namespace testutil {

inline std::filesystem::path temp_dir() {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() /
               ("bikevol_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_file(const std::filesystem::path& dir, const std::string& name,
                              const std::string& content) {
    auto path = dir / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// small in-memory graph builder: nodes placed on a local meter grid around
// (0 lat, 0 lon) for easy reasoning about haversine distances
inline bikevol::NetworkGraph
grid_meters_graph(const std::vector<std::pair<double, double>>& node_xy_m,
                  const std::vector<std::tuple<bikevol::NodeId, bikevol::NodeId, double>>& edges,
                  bikevol::EdgeCategory cat = bikevol::EdgeCategory::residential) {
    bikevol::NetworkGraph g;
    const double mdeg = bikevol::meters_per_deg_lat();
    for (std::size_t i = 0; i < node_xy_m.size(); ++i) {
        bikevol::GraphNode n;
        n.id = bikevol::NodeId(i + 1);
        n.lat = node_xy_m[i].second / mdeg;
        n.lon = node_xy_m[i].first / mdeg; // cos(0) = 1 at the equator
        g.add_node(n);
    }
    for (const auto& [u, v, len] : edges) g.add_edge(u, v, len, cat);
    g.finalize();
    return g;
}

} // namespace testutil

#endif
