#include "bikevol/scale.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "bikevol/stats.hpp"

namespace bikevol {

using nlohmann::json;

double daily_rate(double total_count, int study_days) {
    if (study_days <= 0) throw ConfigError("study_days must be positive");
    return total_count / double(study_days);
}

LogLinearValue apply_log_linear(const LogLinearModel& m, double aadb_bikeshare) {
    double exponent = m.a * aadb_bikeshare + m.b;
    LogLinearValue v;
    if (exponent > 50.0) {
        v.value = std::exp(50.0);
        v.overflow = true;
    } else {
        v.value = std::exp(exponent);
    }
    return v;
}

LogLinearFit fit_log_linear(const std::vector<double>& bikeshare,
                            const std::vector<double>& counter) {
    if (bikeshare.size() != counter.size())
        throw ConfigError("fit_log_linear: mismatched lengths");
    std::vector<double> x, logy;
    LogLinearFit fit;
    for (std::size_t i = 0; i < counter.size(); ++i) {
        if (counter[i] > 0.0) {
            x.push_back(bikeshare[i]);
            logy.push_back(std::log(counter[i]));
        } else {
            ++fit.n_dropped_zero;
        }
    }
    if (x.size() < 3)
        throw DataError("fit_log_linear: need at least 3 positive observations");
    OlsResult r = ols_fit(x, logy);
    fit.model.a = r.slope;
    fit.model.b = r.intercept;
    fit.n_used = x.size();
    fit.r_squared = r.r_squared;
    return fit;
}

MultiplierModel fit_multiplier(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size())
        throw ConfigError("fit_multiplier: mismatched lengths");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += w[i] * x[i] * y[i];
        den += w[i] * x[i] * x[i];
    }
    if (!(den > 0.0)) throw DataError("fit_multiplier: degenerate denominator");
    return MultiplierModel{num / den};
}

AadbLayer aadb_layer(const SegmentCounts& counts, const UpscaleModel& m) {
    AadbLayer layer;
    layer.aadb.reserve(counts.counts.size());
    if (m.kind == UpscaleModel::Kind::Multiplier) {
        if (!(m.multiplier.a > 0.0))
            throw ConfigError("multiplier must be positive");
        layer.model = "multiplier";
        for (std::uint64_t c : counts.counts)
            layer.aadb.push_back(m.multiplier.a * daily_rate(double(c), m.study_days));
    } else {
        layer.model = "log_linear";
        for (std::uint64_t c : counts.counts) {
            LogLinearValue v =
                apply_log_linear(m.log_linear, daily_rate(double(c), m.study_days));
            if (v.overflow) ++layer.overflow_edges;
            layer.aadb.push_back(v.value);
        }
    }
    return layer;
}

void save_aadb_geojson(const NetworkGraph& g, const AadbLayer& layer,
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
                           {"aadb", layer.aadb[i]},
                           {"model", layer.model}};
        features.push_back(std::move(f));
    }
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write AADB file: " + path);
    out << doc.dump(2) << "\n";
}

void save_aadb_csv(const NetworkGraph& g, const SegmentCounts& counts,
                   const AadbLayer& layer, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write AADB csv: " + path);
    out << "u,v,ordinal,count,aadb\n";
    const auto& edges = g.edges();
    char buf[64];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", layer.aadb[i]);
        out << edges[i].u << ',' << edges[i].v << ',' << edges[i].ordinal << ','
            << counts.counts[i] << ',' << buf << '\n';
    }
}

} // namespace bikevol
