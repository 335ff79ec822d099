// Acceptance checks for the full pipeline. Each criterion prints one
// PASS/FAIL line; the binary exits nonzero if any criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "bikevol/config.hpp"
#include "bikevol/eval.hpp"
#include "bikevol/netgraph.hpp"
#include "bikevol/rng.hpp"
#include "bikevol/router.hpp"
#include "bikevol/scale.hpp"
#include "bikevol/synthgen.hpp"
#include "bikevol/trips.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bikevol;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << ": " << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

fs::path fresh_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() /
               ("bikevol_accept_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

NetworkGraph random_graph(SplitMix64& rng, int n, int extra, bool integer_lengths) {
    NetworkGraph g;
    const EdgeCategory cats[] = {EdgeCategory::cycleway,   EdgeCategory::residential,
                                 EdgeCategory::lane,       EdgeCategory::unclassified,
                                 EdgeCategory::secondary,  EdgeCategory::tertiary,
                                 EdgeCategory::highway97,  EdgeCategory::footpath,
                                 EdgeCategory::other};
    for (int i = 1; i <= n; ++i) {
        GraphNode node;
        node.id = NodeId(i);
        node.lat = rng.uniform(-0.02, 0.02);
        node.lon = rng.uniform(-0.02, 0.02);
        g.add_node(node);
    }
    auto len = [&] {
        return integer_lengths ? double(1 + rng.next_below(4)) : rng.uniform(1.0, 200.0);
    };
    auto cat = [&] { return cats[rng.next_below(9)]; };
    for (int i = 2; i <= n; ++i)
        g.add_edge(NodeId(1 + rng.next_below(i - 1)), NodeId(i), len(), cat());
    for (int k = 0; k < extra; ++k) {
        NodeId u = NodeId(1 + rng.next_below(n));
        NodeId v = NodeId(1 + rng.next_below(n));
        if (u != v) g.add_edge(u, v, len(), cat());
    }
    g.finalize();
    return g;
}

// --- criterion 1: shortest paths match exhaustive enumeration ---------------

void check_routing_oracle() {
    SplitMix64 rng(1001);
    const double corner_vals[] = {0.005, 0.95, 2.25, 2.75};
    std::string detail;
    std::size_t checked = 0;
    for (int gi = 0; gi < 200 && detail.empty(); ++gi) {
        int n = 5 + int(rng.next_below(26)); // up to 30 nodes
        auto g = random_graph(rng, n, int(rng.next_below(6)), gi % 2 == 0);

        auto cc = closeness_centrality(g);
        StrategyParams params;
        params.centrality = &cc;
        for (std::size_t ei = 0; ei < g.edges().size(); ++ei)
            if (rng.next_below(4) == 0)
                params.corner_edge_weights[ei] = corner_vals[rng.next_below(4)];

        for (WeightStrategy s : all_strategies()) {
            EdgeWeights w = assign_weights(g, s, params);
            for (int q = 0; q < 2; ++q) {
                NodeId src = NodeId(1 + rng.next_below(n));
                NodeId dst = NodeId(1 + rng.next_below(n));
                if (src == dst) continue;
                auto got = shortest_path(g, w, src, dst);
                auto want = oracles::brute_force_shortest(g, w, src, dst);
                ++checked;
                if (got.has_value() != want.has_value()) {
                    detail = "reachability mismatch";
                    break;
                }
                if (!got) continue;
                double tol = 1e-9 * std::max(1.0, want->cost);
                if (std::fabs(got->cost - want->cost) > tol) {
                    detail = "cost mismatch on graph " + std::to_string(gi);
                    break;
                }
                if (got->nodes != want->nodes) {
                    detail = "tie-break mismatch on graph " + std::to_string(gi);
                    break;
                }
            }
            if (!detail.empty()) break;
        }
    }
    report("routing matches exhaustive oracle across all 8 strategies (" +
               std::to_string(checked) + " queries)",
           detail.empty(), detail);
}

// --- criterion 3: multiplier fit is the weighted least-squares minimizer ----

void check_multiplier_fit() {
    SplitMix64 rng(1003);
    std::string detail;
    for (int it = 0; it < 100 && detail.empty(); ++it) {
        int n = 2 + int(rng.next_below(30));
        std::vector<double> x, y, w;
        for (int i = 0; i < n; ++i) {
            x.push_back(rng.uniform(0.01, 50.0));
            y.push_back(rng.uniform(0.0, 5000.0));
            w.push_back(rng.uniform(0.01, 5.0));
        }
        double a = fit_multiplier(x, y, w).a;

        // first-order condition: sum w x (y - a x) = 0
        double foc = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            foc += w[i] * x[i] * (y[i] - a * x[i]);
            scale += w[i] * std::fabs(x[i]) * (std::fabs(y[i]) + std::fabs(a) * x[i]);
        }
        if (std::fabs(foc) > 1e-9 * std::max(1.0, scale))
            detail = "first-order condition violated, instance " + std::to_string(it);

        auto sse = [&](double cand) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                double e = y[i] - cand * x[i];
                s += w[i] * e * e;
            }
            return s;
        };
        double ref = oracles::golden_section(sse, -5000.0, 5000.0);
        if (std::fabs(a - ref) > 1e-6 * std::max(1.0, std::fabs(ref)))
            detail = "golden-section disagreement, instance " + std::to_string(it);
    }
    report("multiplier fit is the weighted least-squares minimizer (100 instances)",
           detail.empty(), detail);
}

// --- criterion 4: log-linear curve values -----------------------------------

void check_log_linear_values() {
    LogLinearModel m;
    std::string detail;
    for (double x : {0.0, 10.0, 100.0}) {
        double want = std::exp(m.a * x + m.b);
        LogLinearValue got = apply_log_linear(m, x);
        if (got.overflow || std::fabs(got.value - want) > 1e-9 * want) {
            detail = "mismatch at x=" + std::to_string(x);
            break;
        }
    }
    if (detail.empty() && !apply_log_linear(m, 1e7).overflow)
        detail = "overflow guard not engaged";
    report("log-linear upscaling curve matches exp(a*x + b) at {0, 10, 100}",
           detail.empty(), detail);
}

// --- criterion 5: weekly regression matches an independent reference --------

void check_regression_reference() {
    SplitMix64 rng(1005);
    std::string detail;
    for (int it = 0; it < 50 && detail.empty(); ++it) {
        int n = 4 + int(rng.next_below(30));
        std::vector<double> x, y;
        double slope = rng.uniform(-5, 5), icpt = rng.uniform(-100, 100);
        for (int i = 0; i < n; ++i) {
            x.push_back(rng.uniform(0, 200));
            y.push_back(slope * x.back() + icpt + rng.normal(0, 10));
        }
        OlsResult got = weekly_regression(x, y);
        auto want = oracles::normal_equations(x, y);
        if (std::fabs(got.slope - want.slope) > 1e-9 * std::max(1.0, std::fabs(want.slope)) ||
            std::fabs(got.intercept - want.intercept) >
                1e-9 * std::max(1.0, std::fabs(want.intercept)) ||
            std::fabs(got.r_squared - want.r_squared) > 1e-9) {
            detail = "coefficients, instance " + std::to_string(it);
            break;
        }
        // reference p-value via adaptive Simpson integration of the t density
        double se_t;
        {
            double mx = 0, my = 0;
            for (int i = 0; i < n; ++i) {
                mx += x[i];
                my += y[i];
            }
            mx /= n;
            my /= n;
            double sxx = 0, ss_res = 0;
            for (int i = 0; i < n; ++i) {
                sxx += (x[i] - mx) * (x[i] - mx);
                double e = y[i] - (got.slope * x[i] + got.intercept);
                ss_res += e * e;
            }
            double se = std::sqrt(ss_res / (n - 2) / sxx);
            se_t = got.slope / se;
        }
        double p_ref = oracles::t_two_sided_p_reference(se_t, double(n - 2));
        if (std::fabs(got.p_value - p_ref) > 1e-6)
            detail = "p-value, instance " + std::to_string(it);
    }
    report("weekly regression matches the normal-equations and quadrature reference "
           "(50 datasets)",
           detail.empty(), detail);
}

// --- criterion 6: closeness centrality vs Floyd-Warshall --------------------

void check_centrality_oracle() {
    SplitMix64 rng(1006);
    std::string detail;
    for (int gi = 0; gi < 50 && detail.empty(); ++gi) {
        int n = 2 + int(rng.next_below(49)); // up to 50 nodes
        // leave some graphs disconnected by skipping tree edges
        NetworkGraph g;
        for (int i = 1; i <= n; ++i) {
            GraphNode node;
            node.id = NodeId(i);
            node.lat = rng.uniform(-0.02, 0.02);
            node.lon = rng.uniform(-0.02, 0.02);
            g.add_node(node);
        }
        for (int i = 2; i <= n; ++i)
            if (rng.next_below(10) != 0)
                g.add_edge(NodeId(1 + rng.next_below(i - 1)), NodeId(i),
                           rng.uniform(1.0, 500.0), EdgeCategory::residential);
        for (int k = 0; k < n / 3; ++k) {
            NodeId u = NodeId(1 + rng.next_below(n));
            NodeId v = NodeId(1 + rng.next_below(n));
            if (u != v) g.add_edge(u, v, rng.uniform(1.0, 500.0), EdgeCategory::lane);
        }
        g.finalize();

        auto got = closeness_centrality(g);
        auto d = oracles::floyd_warshall(g);
        for (std::size_t i = 0; i < g.nodes().size(); ++i) {
            double sum = 0.0;
            std::size_t reached = 0;
            for (std::size_t j = 0; j < g.nodes().size(); ++j) {
                if (i == j || !std::isfinite(d[i][j])) continue;
                sum += d[i][j];
                ++reached;
            }
            double want = reached == 0 ? 0.0 : double(reached) / sum;
            double have = got.at(g.nodes()[i].id);
            if (std::fabs(have - want) > 1e-9 * std::max(1.0, want)) {
                detail = "node " + std::to_string(g.nodes()[i].id) + " graph " +
                         std::to_string(gi);
                break;
            }
        }
    }
    report("closeness centrality matches the Floyd-Warshall oracle (50 graphs)",
           detail.empty(), detail);
}

// --- criteria 2, 7, 8: synthetic end-to-end ----------------------------------

struct ScenarioRun {
    NetworkGraph g;
    std::vector<RoutedTrip> routed;
    SegmentCounts counts;
    json gt;
    std::vector<CounterSeries> counters;
    std::size_t trips_total = 0;
};

ScenarioRun run_scenario(const Scenario& sc, const fs::path& dir) {
    ScenarioRun run;
    auto files = generate_scenario(sc, dir.string());
    run.g = load_network(files.network);
    auto trips = load_trips(files.trips);
    run.trips_total = trips.size();
    auto [matched, rep] = match_and_filter(trips, run.g);
    EdgeWeights w = assign_weights(run.g, WeightStrategy::Length, {});
    auto out = route_all(run.g, w, matched, {});
    run.routed = std::move(out.routed);
    run.counts = segment_counts(run.g, run.routed, "length");
    run.gt = json::parse(slurp(files.ground_truth));
    run.counters = load_counters(files.counters);
    return run;
}

std::vector<std::size_t> counter_edges(const ScenarioRun& run, const std::string& id) {
    const auto& c = run.gt["counters"][id];
    return resolve_edges(run.g, std::to_string(c["u"].get<NodeId>()) + "-" +
                                    std::to_string(c["v"].get<NodeId>()));
}

void check_scenarios() {
    Scenario clean_sc; // defaults: 20x20 grid, 500 trips, no noise
    auto clean_run = run_scenario(clean_sc, fresh_dir("clean"));

    // criterion 2: traversal conservation between routes and segment counts
    {
        std::uint64_t hops = 0, total = 0;
        for (const RoutedTrip& rt : clean_run.routed) hops += rt.edge_path.size();
        for (std::uint64_t c : clean_run.counts.counts) total += c;
        report("segment counts conserve routed traversals", total == hops && hops > 0,
               std::to_string(total) + " vs " + std::to_string(hops));
    }

    // criterion 7a: noiseless routes are recovered exactly (>= 99%)
    {
        std::size_t exact = 0;
        for (const RoutedTrip& rt : clean_run.routed) {
            auto truth = clean_run.gt["routes"][rt.id].get<std::vector<NodeId>>();
            if (rt.path == truth) ++exact;
        }
        double frac = clean_run.trips_total == 0
                          ? 0.0
                          : double(exact) / double(clean_run.trips_total);
        report("noiseless scenario recovers >= 99% of routes exactly", frac >= 0.99,
               std::to_string(exact) + "/" + std::to_string(clean_run.trips_total));
    }

    // criterion 8: upscaling factor recovered within 2%
    {
        std::vector<double> xs, ys, ws;
        for (const CounterSeries& cs : clean_run.counters) {
            double x = 0.0;
            for (std::size_t ei : counter_edges(clean_run, cs.counter_id))
                x += double(clean_run.counts.counts[ei]);
            double y = 0.0;
            for (const CounterSample& s : cs.samples) y += double(s.count);
            xs.push_back(x);
            ys.push_back(y);
            ws.push_back(1.0);
        }
        double a = fit_multiplier(xs, ys, ws).a;
        double truth = clean_run.gt["scale_factor"].get<double>();
        bool ok = std::fabs(a - truth) <= 0.02 * truth;
        report("scale factor recovered within 2%", ok,
               "fit " + std::to_string(a) + " vs true " + std::to_string(truth));
    }

    // criterion 7b: noisy sparse sampling keeps the counter split close
    {
        Scenario noisy;
        noisy.seed = 2;
        noisy.noise_sigma_m = 30.0;
        noisy.sample_interval_s = 138.0;
        auto run = run_scenario(noisy, fresh_dir("noisy"));

        std::vector<std::pair<std::string, double>> truth_totals;
        std::vector<std::pair<std::string, std::vector<std::size_t>>> locations;
        for (const auto& [id, c] : run.gt["counters"].items()) {
            truth_totals.emplace_back(id, c["true_bikeshare_traversals"].get<double>());
            locations.emplace_back(id, counter_edges(run, id));
        }
        std::string detail;
        bool ok = false;
        try {
            SplitVector truth_sv = counter_split(truth_totals);
            SplitVector model_sv = counter_split(run.counts, locations);
            double d = split_distance(model_sv, truth_sv);
            ok = d <= 0.1;
            detail = "L1 distance " + std::to_string(d);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        report("noisy scenario (sigma 30 m, 138 s sampling) split error <= 0.1", ok,
               detail);
    }
}

// --- criterion 9: cleaning reports conserve trips and points ----------------

void check_cleaning_conservation() {
    SplitMix64 rng(1009);
    NetworkGraph g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            GraphNode n;
            n.id = NodeId(r * 4 + c + 1);
            n.lat = r * 150.0 / meters_per_deg_lat();
            n.lon = c * 150.0 / meters_per_deg_lat();
            g.add_node(n);
        }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (c + 1 < 4) g.add_edge(NodeId(r * 4 + c + 1), NodeId(r * 4 + c + 2), 150.0,
                                      EdgeCategory::residential);
            if (r + 1 < 4) g.add_edge(NodeId(r * 4 + c + 1), NodeId(r * 4 + c + 5), 150.0,
                                      EdgeCategory::residential);
        }
    g.finalize();
    std::vector<LatLon> ring{{-0.001, -0.001}, {-0.001, 0.006}, {0.006, 0.006},
                             {0.006, -0.001}};

    std::string detail;
    for (int it = 0; it < 1000 && detail.empty(); ++it) {
        std::vector<Trip> trips;
        int n_trips = int(rng.next_below(6));
        for (int k = 0; k < n_trips; ++k) {
            Trip t;
            t.id = "t" + std::to_string(k);
            int n_pts = 1 + int(rng.next_below(10));
            Timestamp ts = Timestamp(rng.next_below(1000));
            for (int i = 0; i < n_pts; ++i) {
                GpsPoint p;
                p.trip_id = t.id;
                p.ts = ts;
                ts += Timestamp(rng.next_below(400)); // may repeat
                p.lat = rng.uniform(-0.002, 0.008);
                p.lon = rng.uniform(-0.002, 0.008);
                t.points.push_back(p);
            }
            trips.push_back(std::move(t));
        }

        CleaningThresholds th;
        th.min_trip_extent_m = rng.uniform(0, 200);
        th.max_trip_extent_m = rng.uniform(500, 30000);
        th.min_duration_s = rng.uniform(0, 120);
        th.max_duration_s = rng.uniform(600, 20000);
        th.max_leg_speed_kmh = rng.uniform(5, 60);
        double cutoff = rng.uniform(20, 200);

        auto [pre, rep] = pre_clean(trips, th);
        if (!rep.conserved()) {
            detail = "pre_clean not conserved, run " + std::to_string(it);
            break;
        }
        auto [bounded, brep] = filter_bounds(pre, ring);
        if (!brep.conserved()) {
            detail = "filter_bounds not conserved, run " + std::to_string(it);
            break;
        }
        auto [matched, mrep] = match_and_filter(bounded, g, cutoff);
        if (!mrep.conserved()) {
            detail = "match_and_filter not conserved, run " + std::to_string(it);
            break;
        }
        rep.chain(brep);
        rep.chain(mrep);
        if (!rep.conserved() || rep.trips_in != std::uint64_t(n_trips)) {
            detail = "chained report not conserved, run " + std::to_string(it);
            break;
        }
        for (const MatchedTrip& mt : matched) {
            if (mt.matched.empty()) detail = "empty matched trip survived";
            for (const MatchedPoint& mp : mt.matched)
                if (mp.match_distance_m > cutoff) detail = "cutoff violated";
        }
    }
    report("cleaning cascade conserves trips and points (1000 randomized runs)",
           detail.empty(), detail);
}

// --- criterion 10: CLI pipeline is deterministic -----------------------------

int run_cli(const std::string& args, const fs::path& log) {
    std::string cmd = std::string(BIKEVOL_CLI_PATH) + " " + args + " 2>>" + log.string();
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void check_cli_determinism() {
    auto base = fresh_dir("cli");
    auto log = base / "cli.log";
    std::string detail;

    // synthesize a scenario through the CLI
    {
        std::ofstream c(base / "synth.conf");
        c << "synth.seed = 7\nsynth.grid_rows = 8\nsynth.grid_cols = 8\n"
          << "synth.num_trips = 80\nsynth.study_days = 28\n";
    }
    auto data = base / "data";
    if (run_cli("synth --config " + (base / "synth.conf").string() + " --out " +
                    data.string(),
                log) != 0)
        detail = "synth failed";

    std::string pipeline_conf;
    if (detail.empty()) {
        // counter edge sets come from the generated ground truth
        json gt = json::parse(slurp(data / "ground_truth.json"));
        auto counters = load_counters((data / "counters.csv").string());
        std::ostringstream c;
        c << "paths.network = " << (data / "network.geojson").string() << "\n"
          << "paths.trips = " << (data / "trips.csv").string() << "\n"
          << "paths.counters = " << (data / "counters.csv").string() << "\n";
        for (const CounterSeries& cs : counters) {
            const auto& info = gt["counters"][cs.counter_id];
            c << "counter." << cs.counter_id << ".edges = " << info["u"].get<NodeId>()
              << "-" << info["v"].get<NodeId>() << "\n";
        }
        c << "scale.study_days = 28\nscale.multiplier = 10\n";
        pipeline_conf = (base / "pipeline.conf").string();
        std::ofstream out(pipeline_conf);
        out << c.str();
    }

    auto run_pipeline = [&](const fs::path& out, unsigned threads) {
        std::string t = " --threads " + std::to_string(threads);
        std::string common = " --config " + pipeline_conf + " --out " + out.string();
        if (run_cli("clean" + common + t, log) != 0) return false;
        if (run_cli("route --strategy length" + common + t, log) != 0) return false;
        if (run_cli("evaluate" + common + t, log) != 0) return false;
        if (run_cli("aadb --model multiplier --strategy length" + common + t, log) != 0)
            return false;
        return true;
    };

    if (detail.empty()) {
        auto out1 = base / "out1";
        auto out2 = base / "out2";
        if (!run_pipeline(out1, 1))
            detail = "pipeline run 1 failed";
        else if (!run_pipeline(out2, 4))
            detail = "pipeline run 2 failed";
        else {
            std::vector<std::string> names;
            for (const auto& entry : fs::directory_iterator(out1))
                names.push_back(entry.path().filename().string());
            std::sort(names.begin(), names.end());
            if (names.empty()) detail = "no outputs produced";
            for (const std::string& name : names) {
                if (!fs::exists(out2 / name)) {
                    detail = name + " missing from second run";
                    break;
                }
                if (slurp(out1 / name) != slurp(out2 / name)) {
                    detail = name + " differs between runs";
                    break;
                }
            }
        }
    }

    // exit codes: 2 for config errors, 3 for data errors
    if (detail.empty()) {
        std::ofstream c(base / "bad.conf");
        c << "paths.trips = /nonexistent.csv\n";
    }
    if (detail.empty() &&
        run_cli("route --config " + (base / "bad.conf").string(), log) != 2)
        detail = "missing paths.network should exit 2";
    if (detail.empty()) {
        std::ofstream c(base / "bad2.conf");
        c << "paths.network = /nonexistent.geojson\npaths.trips = /nonexistent.csv\n";
        c.close();
        if (run_cli("route --config " + (base / "bad2.conf").string(), log) != 3)
            detail = "missing network file should exit 3";
    }

    report("CLI pipeline is deterministic across reruns and thread counts",
           detail.empty(), detail);
}

// --- criterion 11: published Kelowna split fixture ---------------------------

void check_split_fixture() {
    std::string detail;
    SplitVector counter_sv, model_sv;
    std::ifstream in(std::string(BIKEVOL_FIXTURE_DIR) + "/kelowna_counter_splits.csv");
    std::string line;
    if (!in || !std::getline(in, line) ||
        line != "location,counter_share,shortest_length_share") {
        detail = "fixture missing or malformed";
    } else {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string loc, a, b;
            std::getline(ss, loc, ',');
            std::getline(ss, a, ',');
            std::getline(ss, b, ',');
            counter_sv.shares.emplace_back(loc, std::stod(a));
            model_sv.shares.emplace_back(loc, std::stod(b));
        }
    }
    if (detail.empty()) {
        if (counter_sv.shares.size() != 4) detail = "expected 4 locations";
        double cs = 0, ms = 0;
        for (const auto& [n, v] : counter_sv.shares) cs += v;
        for (const auto& [n, v] : model_sv.shares) ms += v;
        // published shares are rounded to 3 decimals; sums are near 1
        if (detail.empty() && (std::fabs(cs - 1.0) > 0.03 || std::fabs(ms - 1.0) > 0.03))
            detail = "share sums off: " + std::to_string(cs) + ", " + std::to_string(ms);
        if (detail.empty()) {
            double d = split_distance(counter_sv, model_sv);
            if (std::fabs(d - 0.224) > 0.001)
                detail = "split distance " + std::to_string(d);
        }
    }
    report("Kelowna counter-split fixture reproduces the published L1 distance",
           detail.empty(), detail);
}

} // namespace

int main() {
    check_routing_oracle();
    check_multiplier_fit();
    check_log_linear_values();
    check_regression_reference();
    check_centrality_oracle();
    check_scenarios();
    check_cleaning_conservation();
    check_cli_determinism();
    check_split_fixture();

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed" << std::endl;
    return 1;
}
