#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "stgmine/errors.hpp"
#include "stgmine/io.hpp"
#include "stgmine/match.hpp"
#include "stgmine/pattern.hpp"
#include "stgmine/synthetic.hpp"

namespace stgmine {

struct BenchSpec {
    enum class Vary { Nodes, Edges };

    Vary vary = Vary::Nodes;
    int min = 50;
    int max = 500;
    int step = 50;
    Pattern pattern;
    int reps = 5; // must be >= 3
    std::uint64_t seed = 1;

    int layers = 3;
    double edges_per_node = 2.0; // spatial density when varying nodes
    int fixed_nodes = 120;       // nodes per layer when varying edges
};

/// Time resolve_csp over all anchors of the pattern on seeded synthetic
/// graphs, one row per parameter point. The reported time is the median of
/// the repetitions after one untimed warmup.
inline std::vector<BenchRow> run_bench(const BenchSpec& spec)
{
    if (spec.min > spec.max || spec.step <= 0)
        throw Error(ErrorCode::BadInput, "bench range must satisfy min <= max and step > 0");
    if (spec.reps < 3)
        throw Error(ErrorCode::BadInput, "bench needs at least 3 repetitions");

    std::vector<BenchRow> rows;
    for (int value = spec.min; value <= spec.max; value += spec.step) {
        SynthConfig config;
        config.layers = spec.layers;
        config.seed = spec.seed + static_cast<std::uint64_t>(value);
        if (spec.vary == BenchSpec::Vary::Nodes) {
            // distribute the total node count over the layers exactly
            for (int t = 0; t < spec.layers; ++t)
                config.layer_nodes.push_back(value / spec.layers + (t < value % spec.layers ? 1 : 0));
            config.spatial_edges_per_layer =
                static_cast<int>(spec.edges_per_node * value / spec.layers);
        } else {
            config.nodes_per_layer = spec.fixed_nodes;
            config.spatial_edges_per_layer = std::max(1, value / spec.layers);
        }
        STGraph g = generate_synthetic_stg(config);

        std::size_t match_count = 0;
        for (const auto& [anchor, matches] : match_all_anchors(g, spec.pattern)) // warmup
            match_count += matches.size();

        std::vector<double> samples;
        for (int rep = 0; rep < spec.reps; ++rep) {
            auto begin = std::chrono::steady_clock::now();
            auto result = match_all_anchors(g, spec.pattern);
            auto end = std::chrono::steady_clock::now();
            samples.push_back(std::chrono::duration<double, std::milli>(end - begin).count());
            (void)result;
        }
        std::sort(samples.begin(), samples.end());
        double median = samples[samples.size() / 2];
        if (samples.size() % 2 == 0)
            median = (median + samples[samples.size() / 2 - 1]) / 2.0;

        const int anchor_count = spec.pattern.is_spatial() ? spec.layers : spec.layers - 1;
        rows.push_back({g.nodes().size(), g.edges().size(), spec.pattern.name,
                        static_cast<std::size_t>(anchor_count), match_count, median});
    }
    return rows;
}

} // namespace stgmine
