#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stgmine/attr.hpp"
#include "stgmine/errors.hpp"
#include "stgmine/region.hpp"

namespace stgmine {

using NodeId = int;

struct TimeStamp {
    int index = 0;
    std::string label;

    friend bool operator==(const TimeStamp&, const TimeStamp&) = default;
};

/// A geographic object at one instant: the pair (object identity, time).
struct STNode {
    NodeId node_id = 0;
    std::string object_id;
    int time = 0;
    std::string class_label;
    AttrMap attrs;

    friend bool operator==(const STNode&, const STNode&) = default;
};

enum class EdgeCategory { Spatial, SpatioTemporal, Filiation };

enum class FiliationMode { Continuation, Derivation };

inline std::string_view to_string(EdgeCategory c)
{
    switch (c) {
        case EdgeCategory::Spatial: return "spatial";
        case EdgeCategory::SpatioTemporal: return "spatiotemporal";
        case EdgeCategory::Filiation: return "filiation";
    }
    return "?";
}

inline std::string_view to_string(FiliationMode m)
{
    return m == FiliationMode::Continuation ? "continuation" : "derivation";
}

/// Spatial and spatiotemporal edges carry a relation label; filiation edges
/// carry a mode. Factories normalize the unused field so equality is exact.
struct EdgeKind {
    EdgeCategory category = EdgeCategory::Spatial;
    RelationLabel relation;                             // Spatial / SpatioTemporal
    FiliationMode mode = FiliationMode::Continuation;   // Filiation

    static EdgeKind spatial(RelationLabel r) { return {EdgeCategory::Spatial, r, FiliationMode::Continuation}; }
    static EdgeKind spatio_temporal(RelationLabel r)
    {
        return {EdgeCategory::SpatioTemporal, r, FiliationMode::Continuation};
    }
    static EdgeKind filiation(FiliationMode m) { return {EdgeCategory::Filiation, RelationLabel::disjoint(), m}; }

    static EdgeKind continuation() { return filiation(FiliationMode::Continuation); }
    static EdgeKind derivation() { return filiation(FiliationMode::Derivation); }

    auto key() const { return std::tuple(category, relation, mode); }

    friend bool operator==(const EdgeKind& a, const EdgeKind& b) { return a.key() == b.key(); }
};

inline std::string to_string(const EdgeKind& kind)
{
    switch (kind.category) {
        case EdgeCategory::Spatial: return "spatial:" + to_string(kind.relation);
        case EdgeCategory::SpatioTemporal: return "spatiotemporal:" + to_string(kind.relation);
        case EdgeCategory::Filiation: return "filiation:" + std::string(to_string(kind.mode));
    }
    return "?";
}

struct STEdge {
    NodeId src = 0;
    NodeId dst = 0;
    EdgeKind kind;

    friend bool operator==(const STEdge& a, const STEdge& b)
    {
        return a.src == b.src && a.dst == b.dst && a.kind == b.kind;
    }
};

struct StgStats {
    std::size_t nodes = 0;
    std::size_t spatial = 0;
    std::size_t spatio_temporal = 0;
    std::size_t continuation = 0;
    std::size_t derivation = 0;

    std::size_t edges() const { return spatial + spatio_temporal + continuation + derivation; }

    friend bool operator==(const StgStats&, const StgStats&) = default;
};

/// Time-layered graph over (object, time) nodes with spatial (intra-layer),
/// spatiotemporal (consecutive layers) and filiation (identity transmission)
/// edges. Mutation is only possible through the checked add_* operations;
/// once built the graph is read-only and safe to query concurrently.
class STGraph {
public:
    STGraph() = default;

    explicit STGraph(const std::vector<std::string>& layer_labels)
    {
        for (const std::string& label : layer_labels)
            add_layer(label);
    }

    /// Structural assembly without invariant enforcement. Used by the
    /// deserializer so that a corrupted file can still be loaded and then
    /// inspected by validate().
    static STGraph from_parts(std::vector<TimeStamp> timestamps, std::vector<STNode> nodes,
                              std::vector<STEdge> edges)
    {
        STGraph g;
        g.timestamps_ = std::move(timestamps);
        g.nodes_ = std::move(nodes);
        g.edges_ = std::move(edges);
        g.rebuild_indices();
        return g;
    }

    int add_layer(const std::string& label)
    {
        for (const TimeStamp& t : timestamps_)
            if (t.label == label)
                throw Error(ErrorCode::DuplicateLabel, "timestamp label '" + label + "' already present");
        timestamps_.push_back({static_cast<int>(timestamps_.size()), label});
        return timestamps_.back().index;
    }

    NodeId add_node(const std::string& object_id, int time, const std::string& class_label, AttrMap attrs = {})
    {
        if (time < 0 || time >= layer_count())
            throw Error(ErrorCode::BadLayer, "layer " + std::to_string(time) + " out of range [0," +
                                                 std::to_string(layer_count()) + ")");
        if (identity_.contains({object_id, time}))
            throw Error(ErrorCode::DuplicateIdentity,
                        "(" + object_id + ", t=" + std::to_string(time) + ") already present");
        NodeId id = next_node_id_++;
        nodes_.push_back({id, object_id, time, class_label, std::move(attrs)});
        index_node(nodes_.size() - 1);
        return id;
    }

    void add_edge(NodeId src, NodeId dst, const EdgeKind& kind)
    {
        const STNode& s = node(src);
        const STNode& d = node(dst);
        switch (kind.category) {
            case EdgeCategory::Spatial:
                if (src == dst)
                    throw Error(ErrorCode::SelfLoop, "spatial self-loop on node " + std::to_string(src));
                if (s.time != d.time)
                    throw Error(ErrorCode::LayerViolation, "spatial edge across layers " +
                                                               std::to_string(s.time) + " and " +
                                                               std::to_string(d.time));
                break;
            case EdgeCategory::SpatioTemporal:
                if (d.time != s.time + 1)
                    throw Error(ErrorCode::LayerViolation,
                                "spatiotemporal edge must span consecutive layers, got " +
                                    std::to_string(s.time) + " -> " + std::to_string(d.time));
                if (!kind.relation.is_simple())
                    throw Error(ErrorCode::InvalidRelation, "spatiotemporal edges carry only simple relations");
                break;
            case EdgeCategory::Filiation:
                if (d.time != s.time + 1)
                    throw Error(ErrorCode::LayerViolation, "filiation edge must span consecutive layers, got " +
                                                               std::to_string(s.time) + " -> " +
                                                               std::to_string(d.time));
                if (kind.mode == FiliationMode::Continuation && s.object_id != d.object_id)
                    throw Error(ErrorCode::IdentityViolation, "continuation edge between '" + s.object_id +
                                                                  "' and '" + d.object_id + "'");
                if (kind.mode == FiliationMode::Derivation && s.object_id == d.object_id)
                    throw Error(ErrorCode::IdentityViolation,
                                "derivation edge within object '" + s.object_id + "'");
                break;
        }
        if (!edge_keys_.insert({src, dst, kind.key()}).second)
            throw Error(ErrorCode::DuplicateEdge, "edge " + std::to_string(src) + " -> " + std::to_string(dst) +
                                                      " (" + to_string(kind) + ") already present");
        edges_.push_back({src, dst, kind});
        index_edge(edges_.size() - 1);
    }

    int layer_count() const { return static_cast<int>(timestamps_.size()); }
    const std::vector<TimeStamp>& timestamps() const { return timestamps_; }
    const std::vector<STNode>& nodes() const { return nodes_; }
    const std::vector<STEdge>& edges() const { return edges_; }

    bool has_node(NodeId id) const { return node_index_.contains(id); }

    const STNode& node(NodeId id) const
    {
        auto it = node_index_.find(id);
        if (it == node_index_.end())
            throw Error(ErrorCode::UnknownNode, "node " + std::to_string(id));
        return nodes_[it->second];
    }

    std::vector<NodeId> nodes_at(int time) const
    {
        if (time < 0 || time >= layer_count())
            throw Error(ErrorCode::BadLayer, "layer " + std::to_string(time) + " out of range");
        auto it = layer_nodes_.find(time);
        return it == layer_nodes_.end() ? std::vector<NodeId>{} : it->second;
    }

    std::size_t layer_size(int time) const
    {
        auto it = layer_nodes_.find(time);
        return it == layer_nodes_.end() ? 0 : it->second.size();
    }

    /// Nodes adjacent through edges of the given category (either direction),
    /// ascending node id. No filter returns neighbors across all categories.
    std::vector<NodeId> neighbors(NodeId id, std::optional<EdgeCategory> kind_filter = std::nullopt) const
    {
        node(id); // throws UnknownNode
        std::set<NodeId> out;
        auto consider = [&](int edge_idx) {
            const STEdge& e = edges_[edge_idx];
            if (kind_filter && e.kind.category != *kind_filter)
                return;
            out.insert(e.src == id ? e.dst : e.src);
        };
        if (auto it = out_edges_.find(id); it != out_edges_.end())
            for (int idx : it->second)
                consider(idx);
        if (auto it = in_edges_.find(id); it != in_edges_.end())
            for (int idx : it->second)
                consider(idx);
        return {out.begin(), out.end()};
    }

    StgStats stats() const
    {
        StgStats s;
        s.nodes = nodes_.size();
        for (const STEdge& e : edges_) {
            switch (e.kind.category) {
                case EdgeCategory::Spatial: ++s.spatial; break;
                case EdgeCategory::SpatioTemporal: ++s.spatio_temporal; break;
                case EdgeCategory::Filiation:
                    if (e.kind.mode == FiliationMode::Continuation)
                        ++s.continuation;
                    else
                        ++s.derivation;
                    break;
            }
        }
        return s;
    }

    const std::vector<int>& out_edge_indices(NodeId id) const
    {
        static const std::vector<int> empty;
        auto it = out_edges_.find(id);
        return it == out_edges_.end() ? empty : it->second;
    }

    const std::vector<int>& in_edge_indices(NodeId id) const
    {
        static const std::vector<int> empty;
        auto it = in_edges_.find(id);
        return it == in_edges_.end() ? empty : it->second;
    }

    /// All edges between the ordered pair (src, dst).
    std::vector<const STEdge*> edges_between(NodeId src, NodeId dst) const
    {
        std::vector<const STEdge*> out;
        auto it = pair_edges_.find({src, dst});
        if (it != pair_edges_.end())
            for (int idx : it->second)
                out.push_back(&edges_[idx]);
        return out;
    }

    friend bool operator==(const STGraph& a, const STGraph& b)
    {
        return a.timestamps_ == b.timestamps_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    void index_node(std::size_t pos)
    {
        const STNode& n = nodes_[pos];
        node_index_.emplace(n.node_id, pos);
        identity_.emplace(std::pair{n.object_id, n.time}, n.node_id);
        auto& layer = layer_nodes_[n.time];
        layer.insert(std::upper_bound(layer.begin(), layer.end(), n.node_id), n.node_id);
        next_node_id_ = std::max(next_node_id_, n.node_id + 1);
    }

    void index_edge(std::size_t pos)
    {
        const STEdge& e = edges_[pos];
        out_edges_[e.src].push_back(static_cast<int>(pos));
        in_edges_[e.dst].push_back(static_cast<int>(pos));
        pair_edges_[{e.src, e.dst}].push_back(static_cast<int>(pos));
    }

    void rebuild_indices()
    {
        node_index_.clear();
        identity_.clear();
        layer_nodes_.clear();
        out_edges_.clear();
        in_edges_.clear();
        pair_edges_.clear();
        edge_keys_.clear();
        next_node_id_ = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (!node_index_.contains(nodes_[i].node_id))
                index_node(i);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            index_edge(i);
            edge_keys_.insert({edges_[i].src, edges_[i].dst, edges_[i].kind.key()});
        }
    }

    std::vector<TimeStamp> timestamps_;
    std::vector<STNode> nodes_;
    std::vector<STEdge> edges_;

    NodeId next_node_id_ = 0;
    std::map<NodeId, std::size_t> node_index_;
    std::map<std::pair<std::string, int>, NodeId> identity_;
    std::map<int, std::vector<NodeId>> layer_nodes_;
    std::map<NodeId, std::vector<int>> out_edges_;
    std::map<NodeId, std::vector<int>> in_edges_;
    std::map<std::pair<NodeId, NodeId>, std::vector<int>> pair_edges_;
    std::set<std::tuple<NodeId, NodeId, decltype(std::declval<EdgeKind>().key())>> edge_keys_;
};

// ---------------------------------------------------------------------------
// Full re-validation
// ---------------------------------------------------------------------------

struct Violation {
    std::string code;
    std::string message;
};

/// Scan every node and edge against the structural invariants. Graphs built
/// through add_node/add_edge always pass; graphs assembled from files may not.
inline std::vector<Violation> validate(const STGraph& g)
{
    std::vector<Violation> out;
    auto report = [&](std::string code, std::string message) {
        out.push_back({std::move(code), std::move(message)});
    };

    std::set<std::string> labels;
    for (std::size_t i = 0; i < g.timestamps().size(); ++i) {
        const TimeStamp& t = g.timestamps()[i];
        if (t.index != static_cast<int>(i))
            report("BadTimestamps", "timestamp at position " + std::to_string(i) + " has index " +
                                        std::to_string(t.index));
        if (!labels.insert(t.label).second)
            report("DuplicateLabel", "timestamp label '" + t.label + "' repeated");
    }

    std::set<NodeId> ids;
    std::set<std::pair<std::string, int>> identities;
    for (const STNode& n : g.nodes()) {
        if (!ids.insert(n.node_id).second)
            report("DuplicateIdentity", "node_id " + std::to_string(n.node_id) + " repeated");
        if (!identities.insert({n.object_id, n.time}).second)
            report("DuplicateIdentity",
                   "(" + n.object_id + ", t=" + std::to_string(n.time) + ") repeated");
        if (n.time < 0 || n.time >= g.layer_count())
            report("BadLayer", "node " + std::to_string(n.node_id) + " at layer " + std::to_string(n.time));
    }

    std::set<std::tuple<NodeId, NodeId, std::string>> seen_edges;
    for (const STEdge& e : g.edges()) {
        if (!ids.contains(e.src) || !ids.contains(e.dst)) {
            report("UnknownNode", "edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                                      " references a missing node");
            continue;
        }
        const STNode& s = g.node(e.src);
        const STNode& d = g.node(e.dst);
        if (!seen_edges.insert({e.src, e.dst, to_string(e.kind)}).second)
            report("DuplicateEdge", "edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) + " (" +
                                        to_string(e.kind) + ") repeated");
        switch (e.kind.category) {
            case EdgeCategory::Spatial:
                if (e.src == e.dst)
                    report("SelfLoop", "spatial self-loop on node " + std::to_string(e.src));
                if (s.time != d.time)
                    report("LayerViolation", "spatial edge " + std::to_string(e.src) + " -> " +
                                                 std::to_string(e.dst) + " across layers");
                break;
            case EdgeCategory::SpatioTemporal:
                if (d.time != s.time + 1)
                    report("LayerViolation", "spatiotemporal edge " + std::to_string(e.src) + " -> " +
                                                 std::to_string(e.dst) + " not on consecutive layers");
                if (!e.kind.relation.is_simple())
                    report("InvalidRelation", "spatiotemporal edge " + std::to_string(e.src) + " -> " +
                                                  std::to_string(e.dst) + " carries a complex relation");
                break;
            case EdgeCategory::Filiation:
                if (d.time != s.time + 1)
                    report("LayerViolation", "filiation edge " + std::to_string(e.src) + " -> " +
                                                 std::to_string(e.dst) + " not on consecutive layers");
                if (e.kind.mode == FiliationMode::Continuation && s.object_id != d.object_id)
                    report("IdentityViolation", "continuation edge " + std::to_string(e.src) + " -> " +
                                                    std::to_string(e.dst) + " changes object identity");
                if (e.kind.mode == FiliationMode::Derivation && s.object_id == d.object_id)
                    report("IdentityViolation", "derivation edge " + std::to_string(e.src) + " -> " +
                                                    std::to_string(e.dst) + " keeps object identity");
                break;
        }
    }
    return out;
}

} // namespace stgmine
