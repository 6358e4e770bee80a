#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stgmine/stgmine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;   // I/O, parse, bad arguments
constexpr int kExitNegative = 2; // Unsat / failed validation

using namespace stgmine;

int cmd_identify(const std::string& template_path, const std::string& snapshots_path,
                 const std::string& out_path)
{
    ObjectTemplate tmpl = load_template(template_path);
    std::vector<Snapshot> series = load_snapshot_series(snapshots_path);
    if (series.empty())
        throw Error(ErrorCode::EmptySeries, snapshots_path + " holds no snapshots");

    log_info("identify: " + std::to_string(series.size()) + " snapshots, " +
             std::to_string(tmpl.parts.size()) + " parts");

    std::vector<LayerAssignment> result;
    auto first = solve_static(tmpl, series[0]);
    if (!first) {
        std::cerr << "no satisfying assignment at layer 0 ('" << series[0].time_label << "')\n";
        return kExitNegative;
    }
    result.push_back({0, series[0].time_label, *first});

    DynCspState state(tmpl, series[0], *first);
    for (std::size_t t = 1; t < series.size(); ++t) {
        SnapshotDelta delta = delta_from_snapshot(state, series[t]);
        log_debug("layer " + std::to_string(t) + ": " + std::to_string(delta.removed.size()) + " removed, " +
                  std::to_string(delta.added.size()) + " added, " + std::to_string(delta.changed.size()) +
                  " changed regions");
        auto solution = dyn_solve(state, delta);
        if (!solution) {
            std::cerr << "no satisfying assignment at layer " << t << " ('" << series[t].time_label << "')\n";
            return kExitNegative;
        }
        result.push_back({static_cast<int>(t), series[t].time_label, *solution});
        log_info("layer " + std::to_string(t) + ": solved with " + std::to_string(state.nogoods().size()) +
                 " stored nogoods");
    }
    save_assignments(result, out_path);
    return kExitOk;
}

int cmd_build_stg(const std::string& snapshots_path, const std::string& assignments_path,
                  const std::string& out_path, const ConstructionConfig& config)
{
    std::vector<Snapshot> series = load_snapshot_series(snapshots_path);
    std::vector<LayerAssignment> layers = load_assignments(assignments_path);
    std::vector<IdAssignment> assignments;
    for (const LayerAssignment& a : layers)
        assignments.push_back(a.parts);
    STGraph g = construct_stg(series, assignments, config);
    save_stg(g, out_path);
    StgStats s = g.stats();
    log_info("stg: " + std::to_string(s.nodes) + " nodes, " + std::to_string(s.edges()) + " edges");
    return kExitOk;
}

Pattern resolve_pattern_argument(const std::string& name_or_path)
{
    auto builtin = catalog();
    if (const Pattern* p = find_catalog_pattern(builtin, name_or_path))
        return *p;
    if (std::filesystem::exists(name_or_path))
        return load_pattern(name_or_path);
    throw Error(ErrorCode::BadInput,
                "'" + name_or_path + "' is neither a catalog pattern nor a pattern file");
}

int cmd_match(const std::string& stg_path, const std::string& pattern_arg, std::optional<int> anchor,
              bool all_anchors, std::size_t max_matches, int threads, const std::string& out_path)
{
    STGraph g = load_stg(stg_path);
    Pattern pattern = resolve_pattern_argument(pattern_arg);
    ResolveOptions opts;
    opts.max_matches = max_matches;
    if (all_anchors) {
        auto per_anchor = match_all_anchors(g, pattern, opts, threads);
        std::size_t total = 0;
        for (const auto& [t, matches] : per_anchor)
            total += matches.size();
        save_matches(pattern.name, per_anchor, out_path);
        log_info("match: " + std::to_string(total) + " matches over " + std::to_string(per_anchor.size()) +
                 " anchors");
    } else {
        int at = anchor.value_or(0);
        auto matches = resolve_csp(modelize_csp(g, pattern, at), g, opts);
        save_matches(pattern.name, at, matches, out_path);
        log_info("match: " + std::to_string(matches.size()) + " matches at anchor " + std::to_string(at));
    }
    return kExitOk;
}

int cmd_mine(const std::string& stg_path, const std::vector<std::string>& pattern_args, bool use_catalog,
             double min_support, int threads, const std::string& out_path)
{
    STGraph g = load_stg(stg_path);
    std::vector<Pattern> patterns;
    if (use_catalog)
        patterns = catalog();
    for (const std::string& arg : pattern_args)
        patterns.push_back(resolve_pattern_argument(arg));
    if (patterns.empty())
        throw Error(ErrorCode::BadInput, "no patterns given; pass --catalog or --pattern");
    FrequencyTable table = mine_frequent(g, patterns, min_support, {}, threads);
    save_frequency_csv(table, out_path);
    log_info("mine: " + std::to_string(table.size()) + " rows at min support " + std::to_string(min_support));
    return kExitOk;
}

int cmd_classify(const std::string& stg_path, const std::string& out_path)
{
    STGraph g = load_stg(stg_path);
    std::vector<ChangeEvent> events = classify_changes(g);
    save_events(events, out_path);
    log_info("classify: " + std::to_string(events.size()) + " events");
    return kExitOk;
}

int cmd_validate(const std::string& stg_path)
{
    STGraph g = load_stg(stg_path);
    std::vector<Violation> violations = validate(g);
    if (violations.empty()) {
        std::cout << "ok: " << g.nodes().size() << " nodes, " << g.edges().size() << " edges\n";
        return kExitOk;
    }
    for (const Violation& v : violations)
        std::cerr << v.code << ": " << v.message << '\n';
    return kExitNegative;
}

int cmd_bench(const std::string& vary, int min, int max, int step, const std::string& pattern_arg, int reps,
              std::uint64_t seed, double density, int fixed_nodes, const std::string& out_path)
{
    BenchSpec spec;
    if (vary == "nodes")
        spec.vary = BenchSpec::Vary::Nodes;
    else if (vary == "edges")
        spec.vary = BenchSpec::Vary::Edges;
    else
        throw Error(ErrorCode::BadInput, "--vary must be 'nodes' or 'edges'");
    spec.min = min;
    spec.max = max;
    spec.step = step;
    spec.pattern = resolve_pattern_argument(pattern_arg);
    spec.reps = reps;
    spec.seed = seed;
    spec.edges_per_node = density;
    spec.fixed_nodes = fixed_nodes;
    std::vector<BenchRow> rows = run_bench(spec);
    save_bench_csv(rows, out_path);
    log_info("bench: " + std::to_string(rows.size()) + " rows");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spatiotemporal graph mining: identify complex objects, build the evolution graph, "
                 "and detect change patterns"};
    app.require_subcommand(1);

    std::string template_path, snapshots_path, assignments_path, stg_path, pattern_arg, out_path;
    std::vector<std::string> pattern_args;
    std::optional<int> anchor;
    bool all_anchors = false, use_catalog = false;
    std::size_t max_matches = 0;
    double min_support = 0.0, density = 2.0;
    int threads = 1, reps = 5, bench_min = 50, bench_max = 500, bench_step = 50, fixed_nodes = 120;
    std::uint64_t seed = 1;
    std::string vary = "nodes";
    ConstructionConfig construction;

    auto* identify = app.add_subcommand("identify", "identify the object parts in every snapshot");
    identify->add_option("--template", template_path, "object template JSON")->required();
    identify->add_option("--snapshots", snapshots_path, "snapshot directory or file")->required();
    identify->add_option("--out", out_path, "assignments JSON output")->required();

    auto* build = app.add_subcommand("build-stg", "construct the spatiotemporal graph");
    build->add_option("--snapshots", snapshots_path, "snapshot directory or file")->required();
    build->add_option("--assignments", assignments_path, "assignments JSON from identify")->required();
    build->add_option("--out", out_path, "graph JSON output")->required();
    build->add_option("--theta-continuation", construction.theta_continuation,
                      "min footprint overlap for continuation");
    build->add_option("--theta-derivation", construction.theta_derivation,
                      "min child overlap for derivation");
    build->add_option("--near", construction.near_distance, "emit near(d) edges up to this distance");

    auto* match = app.add_subcommand("match", "detect one pattern in a graph");
    match->add_option("--stg", stg_path, "graph JSON")->required();
    match->add_option("--pattern", pattern_arg, "catalog pattern name or pattern file")->required();
    match->add_option("--anchor", anchor, "anchor layer (default 0)");
    match->add_flag("--all-anchors", all_anchors, "match at every admissible anchor");
    match->add_option("--max-matches", max_matches, "stop after this many matches (0 = all)");
    match->add_option("--threads", threads, "worker threads for --all-anchors");
    match->add_option("--out", out_path, "matches JSON output")->required();

    auto* mine = app.add_subcommand("mine", "frequency table over patterns and anchors");
    mine->add_option("--stg", stg_path, "graph JSON")->required();
    mine->add_flag("--catalog", use_catalog, "mine the built-in pattern catalog");
    mine->add_option("--pattern", pattern_args, "extra pattern files or catalog names");
    mine->add_option("--min-support", min_support, "keep rows with support >= this value");
    mine->add_option("--threads", threads, "worker threads");
    mine->add_option("--out", out_path, "CSV output")->required();

    auto* classify = app.add_subcommand("classify", "list change events of a graph");
    classify->add_option("--stg", stg_path, "graph JSON")->required();
    classify->add_option("--out", out_path, "events JSON output")->required();

    auto* validate_cmd = app.add_subcommand("validate", "re-check every structural invariant");
    validate_cmd->add_option("--stg", stg_path, "graph JSON")->required();

    auto* bench = app.add_subcommand("bench", "time pattern detection on synthetic graphs");
    bench->add_option("--vary", vary, "nodes or edges")->required();
    bench->add_option("--min", bench_min, "first parameter value")->required();
    bench->add_option("--max", bench_max, "last parameter value")->required();
    bench->add_option("--step", bench_step, "parameter increment")->required();
    bench->add_option("--pattern", pattern_arg, "catalog pattern name or pattern file")->required();
    bench->add_option("--reps", reps, "repetitions per point (>= 3)");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--density", density, "spatial edges per node when varying nodes");
    bench->add_option("--fixed-nodes", fixed_nodes, "nodes per layer when varying edges");
    bench->add_option("--out", out_path, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(identify))
            return cmd_identify(template_path, snapshots_path, out_path);
        if (app.got_subcommand(build))
            return cmd_build_stg(snapshots_path, assignments_path, out_path, construction);
        if (app.got_subcommand(match))
            return cmd_match(stg_path, pattern_arg, anchor, all_anchors, max_matches, threads, out_path);
        if (app.got_subcommand(mine))
            return cmd_mine(stg_path, pattern_args, use_catalog, min_support, threads, out_path);
        if (app.got_subcommand(classify))
            return cmd_classify(stg_path, out_path);
        if (app.got_subcommand(validate_cmd))
            return cmd_validate(stg_path);
        if (app.got_subcommand(bench))
            return cmd_bench(vary, bench_min, bench_max, bench_step, pattern_arg, reps, seed, density,
                             fixed_nodes, out_path);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
