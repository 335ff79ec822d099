#ifndef BIKEVOL_SCALE_HPP
#define BIKEVOL_SCALE_HPP

#include <string>
#include <vector>

#include "bikevol/router.hpp"

namespace bikevol {

struct LogLinearModel {
    double a = 0.02717094; // shipped defaults from the Kelowna calibration
    double b = 6.325313;
};

struct MultiplierModel {
    double a = 159.0;
};

struct UpscaleModel {
    enum class Kind { LogLinear, Multiplier } kind = Kind::Multiplier;
    LogLinearModel log_linear;
    MultiplierModel multiplier;
    int study_days = 91;
};

double daily_rate(double total_count, int study_days);

struct LogLinearValue {
    double value = 0.0;
    bool overflow = false; // exponent exceeded the guard; value is capped
};

// exp(a * aadb_bs + b), capped at exp(50) with an overflow flag.
LogLinearValue apply_log_linear(const LogLinearModel& m, double aadb_bikeshare);

struct LogLinearFit {
    LogLinearModel model;
    std::size_t n_used = 0;
    std::size_t n_dropped_zero = 0; // counter == 0 observations excluded
    double r_squared = 0.0;         // on the log scale
};

// OLS of ln(counter) = a * bikeshare + b over pooled daily observations.
LogLinearFit fit_log_linear(const std::vector<double>& bikeshare,
                            const std::vector<double>& counter);

// Weighted least squares multiplier: a = sum(w x y) / sum(w x^2).
MultiplierModel fit_multiplier(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& w);

struct AadbLayer {
    std::vector<double> aadb;       // indexed like NetworkGraph::edges()
    std::string model;              // descriptor
    std::uint64_t overflow_edges = 0;
};

AadbLayer aadb_layer(const SegmentCounts& counts, const UpscaleModel& m);

void save_aadb_geojson(const NetworkGraph& g, const AadbLayer& layer,
                       const std::string& path);
// CSV `u,v,ordinal,count,aadb`.
void save_aadb_csv(const NetworkGraph& g, const SegmentCounts& counts,
                   const AadbLayer& layer, const std::string& path);

} // namespace bikevol

#endif
