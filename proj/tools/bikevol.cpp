#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "bikevol/config.hpp"
#include "bikevol/eval.hpp"
#include "bikevol/netgraph.hpp"
#include "bikevol/router.hpp"
#include "bikevol/scale.hpp"
#include "bikevol/stats.hpp"
#include "bikevol/synthgen.hpp"
#include "bikevol/trips.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bikevol;

namespace {

CleaningThresholds thresholds_from(const Config& cfg) {
    CleaningThresholds t;
    t.min_trip_extent_m = cfg.get_double("clean.min_extent_m", t.min_trip_extent_m);
    t.max_trip_extent_m = cfg.get_double("clean.max_extent_m", t.max_trip_extent_m);
    t.min_duration_s = cfg.get_double("clean.min_duration_s", t.min_duration_s);
    t.max_duration_s = cfg.get_double("clean.max_duration_s", t.max_duration_s);
    t.max_leg_speed_kmh = cfg.get_double("clean.max_speed_kmh", t.max_leg_speed_kmh);
    if (t.min_trip_extent_m < 0 || t.max_trip_extent_m <= 0 || t.min_duration_s < 0 ||
        t.max_duration_s <= 0 || t.max_leg_speed_kmh <= 0)
        throw ConfigError("cleaning thresholds must be positive");
    return t;
}

std::string out_dir(const Config& cfg, const std::string& override_dir) {
    std::string dir = override_dir.empty() ? cfg.get("output.dir", "out") : override_dir;
    fs::create_directories(dir);
    return dir;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

NetworkGraph load_graph(const Config& cfg) {
    return load_network(cfg.require("paths.network"));
}

RemapTable load_remap_opt(const Config& cfg, const NetworkGraph& g) {
    if (!cfg.has("paths.remap")) return {};
    return load_remap(cfg.get("paths.remap"), g);
}

// Full cleaning cascade on raw trips; returns cleaned raw trips + merged report.
std::pair<std::vector<Trip>, CleaningReport>
run_cleaning(const Config& cfg, std::vector<Trip> trips, const NetworkGraph& g) {
    auto [pre, rep] = pre_clean(std::move(trips), thresholds_from(cfg));
    if (cfg.has("paths.boundary")) {
        auto ring = load_boundary_csv(cfg.get("paths.boundary"));
        auto [bounded, brep] = filter_bounds(std::move(pre), ring);
        rep.chain(brep);
        pre = std::move(bounded);
    }
    double max_match = cfg.get_double("match.max_distance_m", 150.0);
    auto [matchable, mrep] = filter_matchable(pre, g, max_match);
    rep.chain(mrep);
    return {std::move(matchable), std::move(rep)};
}

std::map<std::string, double> category_weights_from(const Config& cfg) {
    std::map<std::string, double> out;
    for (const std::string& key : cfg.keys_with_prefix("weights.")) {
        std::string cat = key.substr(8);
        if (!parse_category(cat)) throw ConfigError("unknown edge category: " + cat);
        out[cat] = cfg.get_double(key, 1.0);
    }
    return out;
}

StrategyParams make_params(const Config& cfg, const NetworkGraph& g,
                           const std::unordered_map<NodeId, double>* cc) {
    StrategyParams p;
    for (const auto& [cat, w] : category_weights_from(cfg))
        p.preference_weights[*parse_category(cat)] = w;
    std::set<std::string> corner_names;
    for (const std::string& key : cfg.keys_with_prefix("corner.")) {
        std::size_t dot = key.find('.', 7);
        if (dot != std::string::npos) corner_names.insert(key.substr(7, dot - 7));
    }
    for (const std::string& name : corner_names) {
        double w = cfg.get_double("corner." + name + ".weight", 1.0);
        for (std::size_t ei : resolve_edges(g, cfg.require("corner." + name + ".edges")))
            p.corner_edge_weights[ei] = w;
    }
    p.centrality = cc;
    return p;
}

// counter id -> edge set, in sorted id order
std::vector<std::pair<std::string, std::vector<std::size_t>>>
counter_locations(const Config& cfg, const NetworkGraph& g) {
    std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
    std::set<std::string> names;
    for (const std::string& key : cfg.keys_with_prefix("counter.")) {
        std::size_t dot = key.find('.', 8);
        if (dot != std::string::npos) names.insert(key.substr(8, dot - 8));
    }
    for (const std::string& name : names)
        out.emplace_back(name, resolve_edges(g, cfg.require("counter." + name + ".edges")));
    return out;
}

std::vector<Timestamp> traversal_events(const std::vector<RoutedTrip>& routed,
                                        const std::vector<std::size_t>& edges) {
    std::set<std::size_t> set(edges.begin(), edges.end());
    std::vector<Timestamp> events;
    for (const RoutedTrip& rt : routed)
        for (std::size_t li = 1; li < rt.leg_boundaries.size(); ++li)
            for (std::size_t k = rt.leg_boundaries[li - 1]; k < rt.leg_boundaries[li]; ++k)
                if (set.count(rt.edge_path[k])) events.push_back(rt.leg_ts[li - 1]);
    return events;
}

struct StrategyRun {
    WeightStrategy strategy;
    std::vector<RoutedTrip> routed;
    std::vector<std::string> unroutable;
    SegmentCounts counts;
};

StrategyRun run_strategy(const Config& cfg, const NetworkGraph& g, const RemapTable& remap,
                         const std::vector<MatchedTrip>& matched, WeightStrategy s,
                         const std::unordered_map<NodeId, double>* cc, unsigned threads) {
    StrategyParams params = make_params(cfg, g, cc);
    EdgeWeights w = assign_weights(g, s, params);
    RoutingOutcome ro = route_all(g, w, matched, remap, threads);
    StrategyRun run;
    run.strategy = s;
    run.counts = segment_counts(g, ro.routed, to_string(s));
    run.routed = std::move(ro.routed);
    run.unroutable = std::move(ro.unroutable);
    return run;
}

Scenario scenario_from(const Config& cfg) {
    Scenario sc;
    sc.seed = cfg.get_u64("synth.seed", sc.seed);
    sc.grid_rows = cfg.get_int("synth.grid_rows", sc.grid_rows);
    sc.grid_cols = cfg.get_int("synth.grid_cols", sc.grid_cols);
    sc.spacing_m = cfg.get_double("synth.spacing_m", sc.spacing_m);
    sc.jitter_m = cfg.get_double("synth.jitter_m", sc.jitter_m);
    sc.origin_lat = cfg.get_double("synth.origin_lat", sc.origin_lat);
    sc.origin_lon = cfg.get_double("synth.origin_lon", sc.origin_lon);
    sc.num_trips = cfg.get_int("synth.num_trips", sc.num_trips);
    sc.noise_sigma_m = cfg.get_double("synth.noise_sigma_m", sc.noise_sigma_m);
    sc.sample_interval_s = cfg.get_double("synth.sample_interval_s", sc.sample_interval_s);
    sc.speed_kmh = cfg.get_double("synth.speed_kmh", sc.speed_kmh);
    sc.study_days = cfg.get_int("synth.study_days", sc.study_days);
    sc.scale_factor = cfg.get_double("synth.scale_factor", sc.scale_factor);
    sc.start_date = cfg.get("synth.start_date", sc.start_date);
    return sc;
}

int cmd_synth(const Config& cfg, const std::string& odir) {
    std::string dir = out_dir(cfg, odir);
    ScenarioFiles files = generate_scenario(scenario_from(cfg), dir);
    std::cerr << "synth: wrote " << files.network << ", " << files.trips << ", "
              << files.counters << ", " << files.ground_truth << "\n";
    return 0;
}

int cmd_clean(const Config& cfg, const std::string& odir) {
    std::string dir = out_dir(cfg, odir);
    NetworkGraph g = load_graph(cfg);
    std::vector<Trip> trips = load_trips(cfg.require("paths.trips"));
    auto [cleaned, rep] = run_cleaning(cfg, std::move(trips), g);
    save_trips(cleaned, dir + "/cleaned_trips.csv");
    write_text(dir + "/cleaning_report.json", rep.to_json());
    std::cerr << "clean: " << rep.trips_in << " -> " << rep.trips_out << " trips, "
              << rep.points_in << " -> " << rep.points_out << " points\n";
    return 0;
}

int cmd_route(const Config& cfg, const std::string& strategy_name, const std::string& odir,
              unsigned threads) {
    std::string dir = out_dir(cfg, odir);
    std::string sname = strategy_name.empty() ? cfg.get("route.strategy", "length")
                                              : strategy_name;
    auto strategy = parse_strategy(sname);
    if (!strategy) {
        std::string names;
        for (WeightStrategy s : all_strategies()) names += std::string(" ") + to_string(s);
        throw ConfigError("unknown strategy `" + sname + "`; valid:" + names);
    }
    NetworkGraph g = load_graph(cfg);
    RemapTable remap = load_remap_opt(cfg, g);
    std::vector<Trip> trips = load_trips(cfg.require("paths.trips"));
    auto [matched, mrep] = match_and_filter(trips, g,
                                            cfg.get_double("match.max_distance_m", 150.0));

    std::unordered_map<NodeId, double> cc;
    if (*strategy == WeightStrategy::ClosenessCentrality) cc = closeness_centrality(g);
    StrategyRun run = run_strategy(cfg, g, remap, matched, *strategy,
                                   cc.empty() ? nullptr : &cc, threads);

    save_segment_counts_geojson(g, run.counts, dir + "/counts_" + sname + ".geojson");
    json routes = json::object();
    for (const RoutedTrip& rt : run.routed) routes[rt.id] = rt.path;
    write_text(dir + "/routes_" + sname + ".json", routes.dump(2));
    json summary = {{"strategy", sname},
                    {"trips_matched", matched.size()},
                    {"trips_routed", run.routed.size()},
                    {"trips_unroutable", run.unroutable.size()},
                    {"unroutable_ids", run.unroutable}};
    write_text(dir + "/route_summary_" + sname + ".json", summary.dump(2));
    std::cerr << "route[" << sname << "]: " << run.routed.size() << " routed, "
              << run.unroutable.size() << " unroutable\n";
    return 0;
}

int cmd_evaluate(const Config& cfg, const std::string& odir, unsigned threads) {
    std::string dir = out_dir(cfg, odir);
    NetworkGraph g = load_graph(cfg);
    RemapTable remap = load_remap_opt(cfg, g);
    std::vector<Trip> trips = load_trips(cfg.require("paths.trips"));
    std::vector<CounterSeries> counters = load_counters(cfg.require("paths.counters"));
    auto [matched, mrep] = match_and_filter(trips, g,
                                            cfg.get_double("match.max_distance_m", 150.0));

    auto locations = counter_locations(cfg, g);
    if (locations.empty())
        throw ConfigError("evaluate needs counter.<id>.edges entries");
    std::map<std::string, const CounterSeries*> series_by_id;
    for (const CounterSeries& cs : counters) series_by_id[cs.counter_id] = &cs;
    std::vector<std::pair<std::string, double>> counter_totals;
    for (const auto& [name, edges] : locations) {
        auto it = series_by_id.find(name);
        if (it == series_by_id.end())
            throw DataError("counter `" + name + "` not present in counters file");
        double total = 0.0;
        for (const CounterSample& s : it->second->samples) total += double(s.count);
        counter_totals.emplace_back(name, total);
    }
    SplitVector counter_sv = counter_split(counter_totals);

    std::string reg_id = cfg.get("eval.regression_counter", locations.front().first);
    const std::vector<std::size_t>* reg_edges = nullptr;
    for (const auto& [name, edges] : locations)
        if (name == reg_id) reg_edges = &edges;
    if (!reg_edges) throw ConfigError("eval.regression_counter `" + reg_id +
                                      "` has no counter.<id>.edges entry");

    std::vector<std::string> strategy_names;
    if (cfg.has("eval.strategies"))
        strategy_names = split_list(cfg.get("eval.strategies"));
    else
        for (WeightStrategy s : all_strategies()) strategy_names.push_back(to_string(s));

    bool needs_cc = false;
    for (const std::string& n : strategy_names)
        if (parse_strategy(n) == WeightStrategy::ClosenessCentrality) needs_cc = true;
    std::unordered_map<NodeId, double> cc;
    if (needs_cc) cc = closeness_centrality(g);

    int utc_offset = cfg.get_int("eval.utc_offset_hours", 0);
    double threshold = cfg.get_double("eval.speed_threshold_kmh", 22.5);

    // crossing edge sets, if configured
    std::vector<std::pair<std::string, std::vector<std::size_t>>> crossings;
    {
        std::set<std::string> names;
        for (const std::string& key : cfg.keys_with_prefix("crossing.")) {
            std::size_t dot = key.find('.', 9);
            if (dot != std::string::npos) names.insert(key.substr(9, dot - 9));
        }
        for (const std::string& name : names)
            crossings.emplace_back(name,
                                   resolve_edges(g, cfg.require("crossing." + name + ".edges")));
    }

    json report;
    report["counter_split"] = json::object();
    for (const auto& [name, share] : counter_sv.shares)
        report["counter_split"][name] = share;
    report["speed_threshold_kmh"] = threshold;
    report["trips_matched"] = matched.size();

    std::vector<StrategyScores> scores;
    json strategies_json = json::object();
    for (const std::string& sname : strategy_names) {
        auto strategy = parse_strategy(sname);
        if (!strategy) throw ConfigError("unknown strategy in eval.strategies: " + sname);
        StrategyRun run = run_strategy(cfg, g, remap, matched, *strategy,
                                       needs_cc ? &cc : nullptr, threads);
        save_segment_counts_geojson(g, run.counts, dir + "/counts_" + sname + ".geojson");

        std::vector<LegSpeed> legs;
        for (const RoutedTrip& rt : run.routed) {
            auto ls = leg_speeds(rt, g);
            legs.insert(legs.end(), ls.begin(), ls.end());
        }
        double thr = threshold;
        if (cfg.get_bool("eval.derive_threshold", false))
            thr = derive_speed_threshold(legs, cfg.get_double("eval.threshold_cap_kmh", 40.0));
        SpeedReport speed = speed_feasibility(legs, thr);

        SplitVector sv = counter_split(run.counts, locations);
        double sdist = split_distance(sv, counter_sv);

        // weekly regression at the designated location
        std::map<int, double> weekly_x, weekly_y;
        for (Timestamp t : traversal_events(run.routed, *reg_edges))
            weekly_x[iso_week_key(t)] += 1.0;
        for (const CounterSample& s : series_by_id.at(reg_id)->samples)
            weekly_y[iso_week_key(s.hour_start)] += double(s.count);
        std::set<int> weeks;
        for (const auto& [w, v] : weekly_x) weeks.insert(w);
        for (const auto& [w, v] : weekly_y) weeks.insert(w);
        std::vector<double> xs, ys;
        for (int w : weeks) {
            xs.push_back(weekly_x.count(w) ? weekly_x[w] : 0.0);
            ys.push_back(weekly_y.count(w) ? weekly_y[w] : 0.0);
        }
        RegressionResult reg;
        bool reg_ok = false;
        std::string reg_err;
        try {
            reg = weekly_regression(xs, ys);
            reg_ok = true;
        } catch (const std::exception& e) {
            reg_err = e.what();
        }

        json sj;
        sj["unroutable"] = run.unroutable.size();
        sj["speed"] = {{"threshold_kmh", speed.threshold_kmh},
                       {"legs_total", speed.legs_total},
                       {"legs_feasible", speed.legs_feasible}};
        if (speed.fraction) sj["speed"]["fraction"] = *speed.fraction;
        json split_json = json::object();
        for (const auto& [name, share] : sv.shares) split_json[name] = share;
        sj["split"] = {{"shares", split_json}, {"l1_distance", sdist}};
        if (reg_ok)
            sj["regression"] = {{"location", reg_id},       {"slope", reg.slope},
                                {"intercept", reg.intercept}, {"r_squared", reg.r_squared},
                                {"p_value", reg.p_value},     {"n_weeks", reg.n}};
        else
            sj["regression"] = {{"location", reg_id}, {"error", reg_err}};

        if (!crossings.empty()) {
            json cj = json::object();
            for (const auto& [name, n] : crossing_report(run.routed, crossings))
                cj[name] = n;
            sj["crossings"] = std::move(cj);
        }

        // hourly bike-share profile at the regression location
        auto events = traversal_events(run.routed, *reg_edges);
        json hours = json::array();
        for (std::uint64_t b : hourly_profile(events, utc_offset)) hours.push_back(b);
        sj["hourly_profile"] = std::move(hours);

        strategies_json[sname] = std::move(sj);

        StrategyScores sc;
        sc.label = sname;
        sc.speed_fraction = speed.fraction;
        sc.split_dist = sdist;
        sc.regression = reg_ok ? reg : RegressionResult{};
        scores.push_back(std::move(sc));
    }
    report["strategies"] = std::move(strategies_json);

    // counter hourly profiles, independent of strategy
    json counter_hours = json::object();
    for (const auto& [name, edges] : locations) {
        std::vector<Timestamp> events;
        for (const CounterSample& s : series_by_id.at(name)->samples)
            for (std::uint64_t k = 0; k < s.count; ++k) events.push_back(s.hour_start);
        json hours = json::array();
        for (std::uint64_t b : hourly_profile(events, utc_offset)) hours.push_back(b);
        counter_hours[name] = std::move(hours);
    }
    report["counter_hourly_profiles"] = std::move(counter_hours);

    std::map<std::string, int> visual;
    for (const std::string& key : cfg.keys_with_prefix("eval.visual."))
        visual[key.substr(12)] = cfg.get_int(key, 0);
    ModelRanking ranking = rank_models(scores, visual);
    report["ranking"] = {{"speed", ranking.speed_top3},
                         {"split", ranking.split_top3},
                         {"regression", ranking.regression_top3},
                         {"visual", ranking.visual_top3},
                         {"aggregate", ranking.aggregate}};

    write_text(dir + "/evaluation.json", report.dump(2));
    std::cerr << "evaluate: " << strategy_names.size() << " strategies, aggregate pick: "
              << ranking.aggregate << "\n";
    return 0;
}

int cmd_aadb(const Config& cfg, const std::string& model_name,
             const std::string& strategy_name, const std::string& odir, unsigned threads) {
    std::string dir = out_dir(cfg, odir);
    std::string mname = model_name.empty() ? cfg.get("scale.model", "multiplier")
                                           : model_name;
    if (mname != "multiplier" && mname != "log_linear")
        throw ConfigError("unknown model `" + mname + "`; valid: multiplier log_linear");

    std::string sname = strategy_name.empty() ? cfg.get("route.strategy", "length")
                                              : strategy_name;
    auto strategy = parse_strategy(sname);
    if (!strategy) throw ConfigError("unknown strategy `" + sname + "`");

    NetworkGraph g = load_graph(cfg);
    RemapTable remap = load_remap_opt(cfg, g);
    std::vector<Trip> trips = load_trips(cfg.require("paths.trips"));
    auto [matched, mrep] = match_and_filter(trips, g,
                                            cfg.get_double("match.max_distance_m", 150.0));
    std::unordered_map<NodeId, double> cc;
    if (*strategy == WeightStrategy::ClosenessCentrality) cc = closeness_centrality(g);
    StrategyRun run = run_strategy(cfg, g, remap, matched, *strategy,
                                   cc.empty() ? nullptr : &cc, threads);

    UpscaleModel model;
    model.kind = mname == "multiplier" ? UpscaleModel::Kind::Multiplier
                                       : UpscaleModel::Kind::LogLinear;
    model.study_days = cfg.get_int("scale.study_days", 91);
    model.multiplier.a = cfg.get_double("scale.multiplier", 159.0);
    model.log_linear.a = cfg.get_double("scale.log_linear.a", 0.02717094);
    model.log_linear.b = cfg.get_double("scale.log_linear.b", 6.325313);

    json fit_json;
    std::string fit = cfg.get("scale.fit", "none");
    if (fit == "multiplier" || fit == "log_linear") {
        auto locations = counter_locations(cfg, g);
        if (locations.empty())
            throw ConfigError("scale.fit needs counter.<id>.edges entries");
        std::vector<CounterSeries> counters = load_counters(cfg.require("paths.counters"));
        std::map<std::string, const CounterSeries*> by_id;
        for (const CounterSeries& cs : counters) by_id[cs.counter_id] = &cs;

        if (fit == "multiplier") {
            std::vector<double> xs, ys;
            for (const auto& [name, edges] : locations) {
                double x = 0.0;
                for (std::size_t ei : edges) x += double(run.counts.counts[ei]);
                auto it = by_id.find(name);
                if (it == by_id.end())
                    throw DataError("counter `" + name + "` not in counters file");
                double y = 0.0;
                for (const CounterSample& s : it->second->samples) y += double(s.count);
                xs.push_back(x);
                ys.push_back(y);
            }
            std::vector<double> ws;
            double ytot = 0.0;
            for (double y : ys) ytot += y;
            if (ytot <= 0.0) throw DataError("scale.fit: all counter totals are zero");
            for (double y : ys) ws.push_back(y / ytot); // split of counts as weights
            model.multiplier = fit_multiplier(xs, ys, ws);
            fit_json = {{"kind", "multiplier"}, {"a", model.multiplier.a}};
        } else {
            // pooled daily observations per location
            std::vector<double> bx, cy;
            for (const auto& [name, edges] : locations) {
                std::map<std::int64_t, double> bs_daily, c_daily;
                for (Timestamp t : traversal_events(run.routed, edges))
                    bs_daily[t / 86400] += 1.0;
                auto it = by_id.find(name);
                if (it == by_id.end())
                    throw DataError("counter `" + name + "` not in counters file");
                for (const CounterSample& s : it->second->samples)
                    c_daily[s.hour_start / 86400] += double(s.count);
                for (const auto& [day, y] : c_daily) {
                    bx.push_back(bs_daily.count(day) ? bs_daily[day] : 0.0);
                    cy.push_back(y);
                }
            }
            LogLinearFit f = fit_log_linear(bx, cy);
            model.log_linear = f.model;
            fit_json = {{"kind", "log_linear"},
                        {"a", f.model.a},
                        {"b", f.model.b},
                        {"n_used", f.n_used},
                        {"n_dropped_zero", f.n_dropped_zero},
                        {"r_squared_log", f.r_squared}};
        }
    } else if (fit != "none") {
        throw ConfigError("scale.fit must be none, multiplier, or log_linear");
    }

    AadbLayer layer = aadb_layer(run.counts, model);
    save_aadb_geojson(g, layer, dir + "/aadb_" + mname + ".geojson");
    save_aadb_csv(g, run.counts, layer, dir + "/aadb_" + mname + ".csv");

    json summary = {{"model", mname},
                    {"strategy", sname},
                    {"study_days", model.study_days},
                    {"overflow_edges", layer.overflow_edges}};
    if (model.kind == UpscaleModel::Kind::Multiplier)
        summary["multiplier"] = model.multiplier.a;
    else
        summary["log_linear"] = {{"a", model.log_linear.a}, {"b", model.log_linear.b}};
    if (!fit_json.is_null()) summary["fit"] = fit_json;
    write_text(dir + "/aadb_summary_" + mname + ".json", summary.dump(2));
    std::cerr << "aadb[" << mname << "/" << sname << "]: wrote layer for "
              << layer.aadb.size() << " edges\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bikevol: bike-share route reconstruction and AADB estimation"};
    app.require_subcommand(1);

    std::string config_path, strategy, model, odir;
    unsigned threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--out", odir, "output directory (overrides output.dir)");
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
    };

    CLI::App* c_clean = app.add_subcommand("clean", "clean raw trips");
    add_common(c_clean);
    CLI::App* c_route = app.add_subcommand("route", "route trips and count segments");
    add_common(c_route);
    c_route->add_option("--strategy", strategy, "weighting strategy");
    CLI::App* c_eval = app.add_subcommand("evaluate", "score all weighting strategies");
    add_common(c_eval);
    CLI::App* c_aadb = app.add_subcommand("aadb", "compute the AADB layer");
    add_common(c_aadb);
    c_aadb->add_option("--model", model, "multiplier or log_linear");
    c_aadb->add_option("--strategy", strategy, "weighting strategy");
    CLI::App* c_synth = app.add_subcommand("synth", "generate a synthetic scenario");
    add_common(c_synth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Config cfg = Config::load(config_path);
        if (c_clean->parsed()) return cmd_clean(cfg, odir);
        if (c_route->parsed()) return cmd_route(cfg, strategy, odir, threads);
        if (c_eval->parsed()) return cmd_evaluate(cfg, odir, threads);
        if (c_aadb->parsed()) return cmd_aadb(cfg, model, strategy, odir, threads);
        if (c_synth->parsed()) return cmd_synth(cfg, odir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
