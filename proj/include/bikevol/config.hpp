#ifndef BIKEVOL_CONFIG_HPP
#define BIKEVOL_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "bikevol/geo.hpp"
#include "bikevol/netgraph.hpp"

namespace bikevol {

// Flat key-value config: `section.key = value` lines, `#` comments.
class Config {
public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& dflt = "") const;
    std::string require(const std::string& key) const;
    double get_double(const std::string& key, double dflt) const;
    int get_int(const std::string& key, int dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;

    // Keys starting with `prefix`, sorted.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

private:
    std::map<std::string, std::string> values_;
};

std::vector<std::string> split_list(const std::string& s, char sep = ',');

// Boundary ring CSV with header `lat,lon`.
std::vector<LatLon> load_boundary_csv(const std::string& path);

// "u-v" tokens, comma separated; resolves to every parallel edge on each pair.
std::vector<std::size_t> resolve_edges(const NetworkGraph& g, const std::string& spec);

} // namespace bikevol

#endif
