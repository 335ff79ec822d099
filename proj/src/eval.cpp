#include "bikevol/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bikevol {

std::vector<LegSpeed> leg_speeds(const RoutedTrip& rt, const NetworkGraph& g) {
    std::vector<LegSpeed> out;
    for (std::size_t i = 1; i < rt.leg_boundaries.size(); ++i) {
        LegSpeed ls;
        ls.trip_id = rt.id;
        ls.leg = i - 1;
        for (std::size_t k = rt.leg_boundaries[i - 1]; k < rt.leg_boundaries[i]; ++k)
            ls.length_m += g.edges()[rt.edge_path[k]].length_m;
        ls.dt_s = double(rt.leg_ts[i] - rt.leg_ts[i - 1]);
        if (ls.dt_s <= 0.0) {
            ls.defined = false;
            ls.speed_kmh = std::numeric_limits<double>::infinity();
        } else {
            ls.speed_kmh = ls.length_m / ls.dt_s * 3.6;
        }
        out.push_back(std::move(ls));
    }
    return out;
}

SpeedReport speed_feasibility(const std::vector<LegSpeed>& legs, double threshold_kmh) {
    SpeedReport rep;
    rep.threshold_kmh = threshold_kmh;
    for (const LegSpeed& ls : legs) {
        ++rep.legs_total;
        if (ls.defined && ls.speed_kmh <= threshold_kmh) ++rep.legs_feasible;
    }
    if (rep.legs_total > 0)
        rep.fraction = double(rep.legs_feasible) / double(rep.legs_total);
    return rep;
}

double derive_speed_threshold(const std::vector<LegSpeed>& legs, double cap_kmh) {
    std::vector<double> speeds;
    for (const LegSpeed& ls : legs)
        if (ls.defined) speeds.push_back(ls.speed_kmh);
    if (speeds.size() < 20)
        throw DataError("derive_speed_threshold: need at least 20 legs");
    double q1 = quantile(speeds, 0.25);
    double q3 = quantile(speeds, 0.75);
    double fence = q3 + 1.5 * (q3 - q1);
    return std::min(fence, cap_kmh);
}

SplitVector counter_split(const std::vector<std::pair<std::string, double>>& totals) {
    double sum = 0.0;
    for (const auto& [name, v] : totals) sum += v;
    if (sum <= 0.0) throw DataError("counter_split: all-zero totals");
    SplitVector sv;
    for (const auto& [name, v] : totals) sv.shares.emplace_back(name, v / sum);
    return sv;
}

SplitVector counter_split(const SegmentCounts& counts,
                          const std::vector<std::pair<std::string, std::vector<std::size_t>>>&
                              location_edges) {
    std::vector<std::pair<std::string, double>> totals;
    for (const auto& [name, edges] : location_edges) {
        double t = 0.0;
        for (std::size_t ei : edges) t += double(counts.counts.at(ei));
        totals.emplace_back(name, t);
    }
    return counter_split(totals);
}

double split_distance(const SplitVector& a, const SplitVector& b) {
    if (a.shares.size() != b.shares.size())
        throw ConfigError("split_distance: mismatched locations");
    double d = 0.0;
    for (std::size_t i = 0; i < a.shares.size(); ++i) {
        if (a.shares[i].first != b.shares[i].first)
            throw ConfigError("split_distance: mismatched location ordering");
        d += std::fabs(a.shares[i].second - b.shares[i].second);
    }
    return d;
}

RegressionResult weekly_regression(const std::vector<double>& weekly_bikeshare,
                                   const std::vector<double>& weekly_counter) {
    return ols_fit(weekly_bikeshare, weekly_counter);
}

int iso_week_key(Timestamp ts) {
    std::int64_t days = ts / 86400;
    if (ts % 86400 < 0) --days;
    std::int64_t weekday = ((days + 3) % 7 + 7) % 7; // Monday = 0
    std::int64_t thursday = days - weekday + 3;

    // civil date of that Thursday
    std::int64_t z = thursday + 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t year = static_cast<std::int64_t>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    unsigned month = mp + (mp < 10 ? 3 : -9);
    if (month <= 2) ++year;

    // days since epoch of Jan 1 of the ISO year
    std::int64_t y = year - 1;
    std::int64_t jan1 =
        365 * y + y / 4 - y / 100 + y / 400 - 719162; // days_from_civil(year,1,1)
    int week = int((thursday - jan1) / 7) + 1;
    return int(year) * 100 + week;
}

std::array<std::uint64_t, 24> hourly_profile(const std::vector<Timestamp>& events,
                                             int utc_offset_hours) {
    std::array<std::uint64_t, 24> bins{};
    for (Timestamp t : events) {
        std::int64_t local = t + std::int64_t(utc_offset_hours) * 3600;
        std::int64_t hour = (local / 3600) % 24;
        if (local % 3600 < 0) --hour;
        hour = ((hour % 24) + 24) % 24;
        ++bins[static_cast<std::size_t>(hour)];
    }
    return bins;
}

std::map<std::string, std::uint64_t>
crossing_report(const std::vector<RoutedTrip>& routed,
                const std::vector<std::pair<std::string, std::vector<std::size_t>>>&
                    crossing_edges) {
    std::map<std::string, std::uint64_t> out;
    std::map<std::size_t, std::string> edge_to_name;
    for (const auto& [name, edges] : crossing_edges) {
        out[name] = 0;
        for (std::size_t ei : edges) edge_to_name[ei] = name;
    }
    for (const RoutedTrip& rt : routed)
        for (std::size_t ei : rt.edge_path) {
            auto it = edge_to_name.find(ei);
            if (it != edge_to_name.end()) ++out[it->second];
        }
    return out;
}

static std::vector<std::string>
top3(std::vector<std::pair<std::string, double>> keyed) {
    // lower key is better; label breaks exact ties for determinism
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second < b.second;
                         return a.first < b.first;
                     });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < keyed.size() && i < 3; ++i)
        out.push_back(keyed[i].first);
    return out;
}

ModelRanking rank_models(const std::vector<StrategyScores>& scores,
                         const std::map<std::string, int>& visual_ordinals) {
    if (scores.empty()) throw ConfigError("rank_models: no strategies");
    ModelRanking r;

    std::vector<std::pair<std::string, double>> speed_key, split_key, reg_key;
    for (const StrategyScores& s : scores) {
        if (!s.speed_fraction)
            throw ConfigError("rank_models: missing speed criterion for " + s.label);
        speed_key.emplace_back(s.label, -*s.speed_fraction);
        split_key.emplace_back(s.label, s.split_dist);
        // significant slopes rank ahead of non-significant, then by R^2
        double penalty = s.regression.p_value < 0.05 ? 0.0 : 10.0;
        reg_key.emplace_back(s.label, penalty - s.regression.r_squared);
    }
    r.speed_top3 = top3(speed_key);
    r.split_top3 = top3(split_key);
    r.regression_top3 = top3(reg_key);
    if (!visual_ordinals.empty()) {
        std::vector<std::pair<std::string, double>> vis_key;
        for (const auto& [label, ord] : visual_ordinals)
            vis_key.emplace_back(label, double(ord));
        r.visual_top3 = top3(vis_key);
    }

    std::vector<const std::vector<std::string>*> criteria = {&r.speed_top3, &r.split_top3,
                                                             &r.regression_top3};
    if (!r.visual_top3.empty()) criteria.push_back(&r.visual_top3);

    std::string best;
    int best_top2 = -1;
    int best_rank_sum = 0;
    for (const StrategyScores& s : scores) {
        int top2 = 0, rank_sum = 0;
        for (const auto* crit : criteria) {
            auto it = std::find(crit->begin(), crit->end(), s.label);
            int rank = it == crit->end() ? 4 : int(it - crit->begin()) + 1;
            rank_sum += rank;
            if (rank <= 2) ++top2;
        }
        if (top2 > best_top2 ||
            (top2 == best_top2 &&
             (rank_sum < best_rank_sum ||
              (rank_sum == best_rank_sum && s.label < best)))) {
            best = s.label;
            best_top2 = top2;
            best_rank_sum = rank_sum;
        }
    }
    r.aggregate = best;
    return r;
}

} // namespace bikevol
