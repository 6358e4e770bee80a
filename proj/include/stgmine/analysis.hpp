#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "stgmine/match.hpp"
#include "stgmine/pattern.hpp"
#include "stgmine/stg.hpp"

namespace stgmine {

// ---------------------------------------------------------------------------
// Frequency mining
// ---------------------------------------------------------------------------

struct FrequencyRow {
    std::string pattern;
    int anchor = 0;
    std::size_t count = 0;
    double support = 0.0; // count / nodes in the anchored layer(s)

    friend bool operator==(const FrequencyRow&, const FrequencyRow&) = default;
};

using FrequencyTable = std::vector<FrequencyRow>;

/// Match every pattern at every anchor and keep the rows whose support
/// reaches min_support. Rows are ordered by pattern (as given), then anchor.
inline FrequencyTable mine_frequent(const STGraph& g, const std::vector<Pattern>& patterns, double min_support,
                                    const ResolveOptions& opts = {}, int threads = 1)
{
    FrequencyTable table;
    for (const Pattern& p : patterns) {
        auto per_anchor = match_all_anchors(g, p, opts, threads);
        for (const auto& [anchor, matches] : per_anchor) {
            std::size_t base = g.layer_size(anchor);
            if (!p.is_spatial())
                base += g.layer_size(anchor + 1);
            double support = base == 0 ? 0.0 : static_cast<double>(matches.size()) / static_cast<double>(base);
            if (support >= min_support)
                table.push_back({p.name, anchor, matches.size(), support});
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Change-event classification
// ---------------------------------------------------------------------------

enum class ChangeKind { Appearance, Disappearance, Continuation, Split, Merge, Growth, Shrinkage };

inline std::string_view to_string(ChangeKind k)
{
    switch (k) {
        case ChangeKind::Appearance: return "appearance";
        case ChangeKind::Disappearance: return "disappearance";
        case ChangeKind::Continuation: return "continuation";
        case ChangeKind::Split: return "split";
        case ChangeKind::Merge: return "merge";
        case ChangeKind::Growth: return "growth";
        case ChangeKind::Shrinkage: return "shrinkage";
    }
    return "?";
}

/// anchor is the base layer of the (t, t+1) transition the event belongs to.
struct ChangeEvent {
    ChangeKind kind = ChangeKind::Continuation;
    std::vector<NodeId> nodes;
    int anchor = 0;

    auto key() const { return std::tuple(anchor, static_cast<int>(kind), nodes); }

    friend bool operator==(const ChangeEvent&, const ChangeEvent&) = default;
};

/// Scan the filiation structure of the graph into change events.
///
/// Every filiation edge is consumed by exactly one pass: continuation edges
/// by the continuation pass, derivation edges into a child with two or more
/// incoming filiation edges by the merge pass, and the remaining derivation
/// edges by the split pass (which emits an event only for parents with at
/// least two of them). Growth and shrinkage annotate continuation edges with
/// a strict area change; appearance and disappearance are absence scans that
/// skip the first and last layer respectively.
inline std::vector<ChangeEvent> classify_changes(const STGraph& g)
{
    std::vector<ChangeEvent> events;
    const int last_layer = g.layer_count() - 1;

    std::map<NodeId, std::vector<const STEdge*>> filiation_in, filiation_out;
    for (const STEdge& e : g.edges()) {
        if (e.kind.category != EdgeCategory::Filiation)
            continue;
        filiation_in[e.dst].push_back(&e);
        filiation_out[e.src].push_back(&e);
    }

    // Appearance / disappearance, with the boundary convention that layer 0
    // cannot appear and the last layer cannot disappear.
    for (const STNode& n : g.nodes()) {
        if (n.time > 0 && !filiation_in.contains(n.node_id))
            events.push_back({ChangeKind::Appearance, {n.node_id}, n.time - 1});
        if (n.time < last_layer && !filiation_out.contains(n.node_id))
            events.push_back({ChangeKind::Disappearance, {n.node_id}, n.time});
    }

    // Continuation pass (plus growth/shrinkage annotations).
    for (const STEdge& e : g.edges()) {
        if (e.kind.category != EdgeCategory::Filiation || e.kind.mode != FiliationMode::Continuation)
            continue;
        int anchor = g.node(e.src).time;
        events.push_back({ChangeKind::Continuation, {e.src, e.dst}, anchor});
        auto before = g.node(e.src).attrs.find("area");
        auto after = g.node(e.dst).attrs.find("area");
        if (before != g.node(e.src).attrs.end() && after != g.node(e.dst).attrs.end()) {
            if (after->second > before->second)
                events.push_back({ChangeKind::Growth, {e.src, e.dst}, anchor});
            else if (after->second < before->second)
                events.push_back({ChangeKind::Shrinkage, {e.src, e.dst}, anchor});
        }
    }

    // Merge pass: children with >= 2 incoming filiation edges. Their
    // derivation in-edges are claimed and do not reach the split pass.
    std::set<const STEdge*> merge_claimed;
    for (const auto& [child, incoming] : filiation_in) {
        if (incoming.size() < 2)
            continue;
        std::vector<NodeId> subjects;
        for (const STEdge* e : incoming) {
            subjects.push_back(e->src);
            if (e->kind.mode == FiliationMode::Derivation)
                merge_claimed.insert(e);
        }
        std::sort(subjects.begin(), subjects.end());
        subjects.push_back(child);
        events.push_back({ChangeKind::Merge, subjects, g.node(child).time - 1});
    }

    // Split pass: remaining derivation edges grouped by parent.
    for (const auto& [parent, outgoing] : filiation_out) {
        std::vector<NodeId> children;
        for (const STEdge* e : outgoing)
            if (e->kind.mode == FiliationMode::Derivation && !merge_claimed.contains(e))
                children.push_back(e->dst);
        if (children.size() < 2)
            continue;
        std::sort(children.begin(), children.end());
        std::vector<NodeId> subjects{parent};
        subjects.insert(subjects.end(), children.begin(), children.end());
        events.push_back({ChangeKind::Split, subjects, g.node(parent).time});
    }

    std::sort(events.begin(), events.end(),
              [](const ChangeEvent& a, const ChangeEvent& b) { return a.key() < b.key(); });
    return events;
}

} // namespace stgmine
