#include "bikevol/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bikevol {

static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": missing `=`");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        c.values_[key] = val;
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return from_string(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string Config::get(const std::string& key, const std::string& dflt) const {
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
}

std::string Config::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + it->second);
    }
}

int Config::get_int(const std::string& key, int dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
        std::size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: " + it->second);
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: " + it->second);
    }
}

bool Config::get_bool(const std::string& key, bool dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError("config key " + key + ": not a boolean: " + it->second);
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (auto it = values_.lower_bound(prefix);
         it != values_.end() && it->first.rfind(prefix, 0) == 0; ++it)
        out.push_back(it->first);
    return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            std::string t = cur;
            cur.clear();
            t.erase(0, t.find_first_not_of(" \t"));
            if (!t.empty() && t.find_last_not_of(" \t") != std::string::npos)
                t.erase(t.find_last_not_of(" \t") + 1);
            if (!t.empty()) out.push_back(t);
        } else {
            cur += c;
        }
    }
    cur.erase(0, cur.find_first_not_of(" \t"));
    if (!cur.empty()) {
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::vector<LatLon> load_boundary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open boundary file: " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "lat,lon")
        throw DataError(path + ": expected header `lat,lon`");
    std::vector<LatLon> ring;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) + ": missing comma");
        try {
            ring.push_back({std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1))});
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) + ": bad coordinate");
        }
    }
    return ring;
}

std::vector<std::size_t> resolve_edges(const NetworkGraph& g, const std::string& spec) {
    std::vector<std::size_t> out;
    for (const std::string& tok : split_list(spec)) {
        std::size_t dash = tok.find('-');
        if (dash == std::string::npos)
            throw ConfigError("edge spec `" + tok + "`: expected u-v");
        NodeId u, v;
        try {
            u = std::stoull(tok.substr(0, dash));
            v = std::stoull(tok.substr(dash + 1));
        } catch (const std::exception&) {
            throw ConfigError("edge spec `" + tok + "`: bad node id");
        }
        bool found = false;
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            const GraphEdge& e = g.edges()[i];
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
                out.push_back(i);
                found = true;
            }
        }
        if (!found)
            throw ConfigError("edge spec `" + tok + "`: no such edge in graph");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace bikevol
