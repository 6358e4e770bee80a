#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stgmine/stg.hpp"

namespace stgmine {

/// Seeded generator for benchmark and fuzzing graphs. Layers are populated
/// with 4-class nodes at random grid positions; spatial edges connect the
/// geometrically closest pairs; identities are carried forward by
/// continuation for most nodes, with a small derivation fan-out and an
/// optional share of merge children.
struct SynthConfig {
    int layers = 3;
    int nodes_per_layer = 50;
    std::vector<int> layer_nodes; // when non-empty, per-layer counts override nodes_per_layer
    int spatial_edges_per_layer = 100;
    double continuation_fraction = 0.8;
    double derivation_parent_fraction = 0.05;
    int derivation_children = 2;
    double merge_fraction = 0.02;
    std::uint64_t seed = 1;
};

inline STGraph generate_synthetic_stg(const SynthConfig& config)
{
    std::mt19937_64 rng(config.seed);
    auto pick = [&](int k) { return k <= 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };

    static const std::array<std::string, 4> classes{"building", "road", "vegetation", "water"};
    auto pick_class = [&]() {
        int roll = pick(100); // 40 / 25 / 20 / 15
        if (roll < 40)
            return classes[0];
        if (roll < 65)
            return classes[1];
        if (roll < 85)
            return classes[2];
        return classes[3];
    };

    std::vector<std::string> labels;
    for (int t = 0; t < config.layers; ++t)
        labels.push_back("t" + std::to_string(t));
    STGraph g(labels);

    struct Placed {
        NodeId id;
        int x, y;
        std::string object_id;
    };
    int next_object = 0;
    auto fresh_object = [&]() { return "o" + std::to_string(next_object++); };

    auto add_synthetic_node = [&](int t, const std::string& object_id, int x, int y) {
        AttrMap attrs{{"area", static_cast<double>(1 + pick(100))},
                      {"centroid_row", static_cast<double>(y)},
                      {"centroid_col", static_cast<double>(x)}};
        NodeId id = g.add_node(object_id, t, pick_class(), std::move(attrs));
        return Placed{id, x, y, object_id};
    };

    std::vector<int> per_layer(static_cast<std::size_t>(config.layers), config.nodes_per_layer);
    if (!config.layer_nodes.empty())
        per_layer = config.layer_nodes;

    std::vector<Placed> previous;
    for (int t = 0; t < config.layers; ++t) {
        const int n = per_layer[static_cast<std::size_t>(t)];
        std::vector<Placed> current;
        if (t == 0) {
            for (int i = 0; i < n; ++i)
                current.push_back(add_synthetic_node(t, fresh_object(), pick(1000), pick(1000)));
        } else {
            const int continued = static_cast<int>(config.continuation_fraction * n);
            const int parents = static_cast<int>(config.derivation_parent_fraction * n);
            for (int i = 0; i < continued && i < static_cast<int>(previous.size()); ++i) {
                const Placed& parent = previous[static_cast<std::size_t>(i)];
                Placed child = add_synthetic_node(t, parent.object_id,
                                                  std::clamp(parent.x + pick(41) - 20, 0, 999),
                                                  std::clamp(parent.y + pick(41) - 20, 0, 999));
                current.push_back(child);
                g.add_edge(parent.id, child.id, EdgeKind::continuation());
                g.add_edge(parent.id, child.id, EdgeKind::spatio_temporal(RelationLabel::overlaps()));
            }
            for (int i = continued; i < continued + parents && i < static_cast<int>(previous.size()); ++i) {
                const Placed& parent = previous[static_cast<std::size_t>(i)];
                for (int k = 0; k < config.derivation_children && static_cast<int>(current.size()) < n; ++k) {
                    Placed child = add_synthetic_node(t, fresh_object(),
                                                      std::clamp(parent.x + pick(61) - 30, 0, 999),
                                                      std::clamp(parent.y + pick(61) - 30, 0, 999));
                    current.push_back(child);
                    g.add_edge(parent.id, child.id, EdgeKind::derivation());
                    g.add_edge(parent.id, child.id, EdgeKind::spatio_temporal(RelationLabel::meets()));
                }
            }
            while (static_cast<int>(current.size()) < n)
                current.push_back(add_synthetic_node(t, fresh_object(), pick(1000), pick(1000)));

            // Extra derivation in-edges to make a few merge children.
            int merges = static_cast<int>(config.merge_fraction * n);
            for (int i = 0; i < merges; ++i) {
                const Placed& extra_parent = previous[static_cast<std::size_t>(pick(static_cast<int>(previous.size())))];
                const Placed& child = current[static_cast<std::size_t>(pick(static_cast<int>(current.size())))];
                if (extra_parent.object_id == child.object_id)
                    continue;
                if (!g.edges_between(extra_parent.id, child.id).empty())
                    continue;
                g.add_edge(extra_parent.id, child.id, EdgeKind::derivation());
            }
        }

        // Spatial edges between the geometrically closest pairs of the layer.
        struct Candidate {
            long dist2;
            std::size_t i, j;
        };
        std::vector<Candidate> candidates;
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                long dx = current[i].x - current[j].x;
                long dy = current[i].y - current[j].y;
                candidates.push_back({dx * dx + dy * dy, i, j});
            }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.dist2, a.i, a.j) < std::tie(b.dist2, b.i, b.j);
        });
        const std::size_t wanted = std::min<std::size_t>(candidates.size(),
                                                         static_cast<std::size_t>(config.spatial_edges_per_layer));
        for (std::size_t k = 0; k < wanted; ++k) {
            RelationLabel rel = (k % 5 == 4) ? RelationLabel::overlaps() : RelationLabel::meets();
            g.add_edge(current[candidates[k].i].id, current[candidates[k].j].id, EdgeKind::spatial(rel));
        }

        previous = std::move(current);
    }
    return g;
}

} // namespace stgmine
