#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "stgmine/errors.hpp"
#include "stgmine/object_template.hpp"
#include "stgmine/snapshot.hpp"
#include "stgmine/stg.hpp"

namespace stgmine {

struct ConstructionConfig {
    /// Continuation: same part at t and t+1, equal class, and footprint
    /// overlap ratio (in either direction) >= theta_continuation.
    double theta_continuation = 0.5;
    /// Derivation: a t+1 region without a continuation parent overlaps a
    /// region of another part at t with child-relative ratio >= theta_derivation.
    double theta_derivation = 0.3;
    /// When > 0, disjoint same-layer pairs within this Chebyshev distance get
    /// a spatial near(d) edge.
    int near_distance = 0;
};

/// Build the spatiotemporal graph for a series of snapshots and the per-layer
/// part -> region assignments produced by identification. One node per
/// identified part per layer; nodes carry area and centroid attributes.
inline STGraph construct_stg(const std::vector<Snapshot>& snapshots, const std::vector<IdAssignment>& assignments,
                             const ConstructionConfig& config = {})
{
    if (snapshots.empty())
        throw Error(ErrorCode::EmptySeries, "need at least one snapshot");
    if (assignments.size() != snapshots.size())
        throw Error(ErrorCode::BadInput, "got " + std::to_string(assignments.size()) + " assignments for " +
                                             std::to_string(snapshots.size()) + " snapshots");

    std::vector<std::string> labels;
    for (const Snapshot& s : snapshots)
        labels.push_back(s.time_label);
    STGraph graph(labels);

    // Layer by layer, parts in name order. node_of[t] maps part -> node id,
    // region_of maps node -> region.
    std::vector<std::map<std::string, NodeId>> node_of(snapshots.size());
    std::map<NodeId, const Region*> region_of;
    for (std::size_t t = 0; t < snapshots.size(); ++t) {
        std::set<int> used_regions;
        for (const auto& [part, region_id] : assignments[t]) {
            const Region* region = snapshots[t].find_region(region_id);
            if (!region)
                throw Error(ErrorCode::UnknownRegion, "assignment at layer " + std::to_string(t) +
                                                          " references region " + std::to_string(region_id));
            if (!used_regions.insert(region_id).second)
                throw Error(ErrorCode::BadInput, "assignment at layer " + std::to_string(t) +
                                                     " maps two parts to region " + std::to_string(region_id));
            auto [crow, ccol] = region->centroid();
            AttrMap attrs = region->extra_attrs();
            attrs["area"] = static_cast<double>(region->area());
            attrs["centroid_row"] = crow;
            attrs["centroid_col"] = ccol;
            NodeId id = graph.add_node(part, static_cast<int>(t), region->class_label(), std::move(attrs));
            node_of[t].emplace(part, id);
            region_of.emplace(id, region);
        }
    }

    // Spatial edges within each layer: one edge per non-disjoint pair,
    // oriented from the smaller node id; near(d) edges when configured.
    for (std::size_t t = 0; t < snapshots.size(); ++t) {
        std::vector<NodeId> layer = graph.nodes_at(static_cast<int>(t));
        for (std::size_t i = 0; i < layer.size(); ++i) {
            for (std::size_t j = i + 1; j < layer.size(); ++j) {
                const Region& a = *region_of.at(layer[i]);
                const Region& b = *region_of.at(layer[j]);
                RelationLabel rel = relation(a, b);
                if (rel != RelationLabel::disjoint())
                    graph.add_edge(layer[i], layer[j], EdgeKind::spatial(rel));
                else if (config.near_distance > 0 && near(a, b, config.near_distance))
                    graph.add_edge(layer[i], layer[j],
                                   EdgeKind::spatial(RelationLabel::near(config.near_distance)));
            }
        }
    }

    // Spatiotemporal edges between non-disjoint consecutive footprints.
    for (std::size_t t = 0; t + 1 < snapshots.size(); ++t) {
        for (NodeId u : graph.nodes_at(static_cast<int>(t))) {
            for (NodeId v : graph.nodes_at(static_cast<int>(t + 1))) {
                RelationLabel rel = relation(*region_of.at(u), *region_of.at(v));
                if (rel != RelationLabel::disjoint())
                    graph.add_edge(u, v, EdgeKind::spatio_temporal(rel));
            }
        }
    }

    // Filiation: continuation for the same part across consecutive layers,
    // derivation from other parts for unmatched children.
    for (std::size_t t = 0; t + 1 < snapshots.size(); ++t) {
        std::set<std::string> continued;
        for (const auto& [part, u] : node_of[t]) {
            auto it = node_of[t + 1].find(part);
            if (it == node_of[t + 1].end())
                continue;
            const Region& before = *region_of.at(u);
            const Region& after = *region_of.at(it->second);
            double ratio = std::max(overlap_ratio(before, after), overlap_ratio(after, before));
            if (before.class_label() == after.class_label() && ratio >= config.theta_continuation) {
                graph.add_edge(u, it->second, EdgeKind::continuation());
                continued.insert(part);
            }
        }
        for (const auto& [child_part, v] : node_of[t + 1]) {
            if (continued.contains(child_part))
                continue;
            const Region& child = *region_of.at(v);
            for (const auto& [parent_part, u] : node_of[t]) {
                if (parent_part == child_part)
                    continue;
                if (overlap_ratio(child, *region_of.at(u)) >= config.theta_derivation)
                    graph.add_edge(u, v, EdgeKind::derivation());
            }
        }
    }

    return graph;
}

} // namespace stgmine
