#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "stgmine/errors.hpp"
#include "stgmine/pattern.hpp"
#include "stgmine/stg.hpp"

namespace stgmine {

// ---------------------------------------------------------------------------
// Subgraph detection as a constraint network R(X, D, C): one variable per
// pattern vertex, domains drawn from the graph nodes of the anchored layer,
// one support constraint per pattern edge, plus all-different.
// ---------------------------------------------------------------------------

/// var -> node morphism for one anchor.
using Match = std::map<std::string, NodeId>;

struct SupportConstraint {
    std::size_t u = 0; // variable indices
    std::size_t v = 0;
    EdgeCategory category = EdgeCategory::Spatial;
    std::vector<RelationLabel> relations;
    std::vector<FiliationMode> modes;
    std::optional<AttrCompare> compare;
};

struct MatchNetwork {
    std::vector<std::string> vars;
    std::vector<std::vector<NodeId>> domains;
    std::vector<SupportConstraint> support;
    bool alldiff = true;
    int anchor = 0;
    bool temporal = false;

    bool inconsistent_by_construction() const
    {
        for (const auto& d : domains)
            if (d.empty())
                return true;
        return false;
    }
};

/// Depth-first search tree: each node is a consistent partial assignment
/// extending its parent by one variable. Leaves at full depth are matches.
struct MatchTree {
    struct TreeNode {
        int parent = -1;
        std::size_t depth = 0; // number of assigned variables
        NodeId value = -1;
    };
    std::vector<TreeNode> nodes;

    std::size_t leaves_at_depth(std::size_t depth) const
    {
        std::vector<bool> has_child(nodes.size(), false);
        for (const TreeNode& n : nodes)
            if (n.parent >= 0)
                has_child[static_cast<std::size_t>(n.parent)] = true;
        std::size_t count = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (!has_child[i] && nodes[i].depth == depth)
                ++count;
        return count;
    }
};

struct ResolveOptions {
    std::size_t max_matches = 0; // 0 = unlimited
    MatchTree* tree = nullptr;
    /// Permutation of variable indices overriding the declaration order.
    /// Changes the search schedule, never the match set.
    std::vector<std::size_t> variable_order;
};

namespace detail {

inline bool vertex_compatible(const STNode& node, const PatternVertex& v, int wanted_layer)
{
    if (node.time != wanted_layer)
        return false;
    if (v.class_label && node.class_label != *v.class_label)
        return false;
    for (const AttrPredicate& pred : v.preds)
        if (!pred.holds(node.attrs))
            return false;
    return true;
}

inline bool labels_allow(const SupportConstraint& c, const EdgeKind& kind, bool flipped)
{
    if (kind.category != c.category)
        return false;
    if (c.category == EdgeCategory::Filiation)
        return c.modes.empty() || std::find(c.modes.begin(), c.modes.end(), kind.mode) != c.modes.end();
    RelationLabel oriented = flipped ? kind.relation.converse() : kind.relation;
    return c.relations.empty() ||
           std::find(c.relations.begin(), c.relations.end(), oriented) != c.relations.end();
}

inline bool compare_holds(const std::optional<AttrCompare>& cmp, const STNode& src, const STNode& dst)
{
    if (!cmp)
        return true;
    auto a = dst.attrs.find(cmp->attr);
    auto b = src.attrs.find(cmp->attr);
    if (a == dst.attrs.end() || b == src.attrs.end())
        return false;
    return cmp_eval(cmp->op, a->second, b->second);
}

/// Is the support constraint satisfied by mapping u -> a, v -> b?
/// Spatial edges are stored once per unordered pair, so both orientations are
/// consulted with the label converted when read backwards. Spatiotemporal and
/// filiation edges are directional.
inline bool support_satisfied(const STGraph& g, const SupportConstraint& c, NodeId a, NodeId b)
{
    for (const STEdge* e : g.edges_between(a, b))
        if (labels_allow(c, e->kind, false) && compare_holds(c.compare, g.node(a), g.node(b)))
            return true;
    if (c.category == EdgeCategory::Spatial)
        for (const STEdge* e : g.edges_between(b, a))
            if (labels_allow(c, e->kind, true) && compare_holds(c.compare, g.node(a), g.node(b)))
                return true;
    return false;
}

} // namespace detail

/// Build the constraint network for one pattern at one anchor layer.
/// Domains are pre-filtered by vertex compatibility (layer, class,
/// attribute predicates); a filtered value could only fail the same check
/// again during search.
inline MatchNetwork modelize_csp(const STGraph& g, const Pattern& pattern, int anchor)
{
    const bool temporal = !pattern.is_spatial();
    const int needed_layers = temporal ? 2 : 1;
    if (anchor < 0 || anchor + needed_layers > g.layer_count())
        throw Error(ErrorCode::BadAnchor, "anchor " + std::to_string(anchor) + " does not fit a " +
                                              (temporal ? std::string("temporal") : std::string("spatial")) +
                                              " pattern in " + std::to_string(g.layer_count()) + " layers");

    MatchNetwork net;
    net.anchor = anchor;
    net.temporal = temporal;
    std::map<std::string, std::size_t> index_of;
    for (const PatternVertex& v : pattern.vertices) {
        index_of.emplace(v.var, net.vars.size());
        net.vars.push_back(v.var);
        std::vector<NodeId> domain;
        for (NodeId id : g.nodes_at(anchor + v.layer))
            if (detail::vertex_compatible(g.node(id), v, anchor + v.layer))
                domain.push_back(id);
        net.domains.push_back(std::move(domain));
    }
    for (const PatternEdge& e : pattern.edges) {
        SupportConstraint c;
        c.u = index_of.at(e.u);
        c.v = index_of.at(e.v);
        c.category = e.category;
        c.relations = e.relations;
        c.modes = e.modes;
        c.compare = e.compare;
        net.support.push_back(c);
    }
    return net;
}

/// Enumerate every solution of the network by depth-first search in variable
/// declaration order, values ascending. A candidate must pass the three
/// coherence filters — id (vertex compatibility, established by the domain),
/// adj (every support constraint whose other endpoint is assigned), and all
/// (injectivity) — or it is dropped from the local domain copy; an empty copy
/// backtracks the branch.
inline std::vector<Match> resolve_csp(const MatchNetwork& net, const STGraph& g, const ResolveOptions& opts = {})
{
    std::vector<Match> out;
    const std::size_t n = net.vars.size();
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (net.inconsistent_by_construction())
        return out;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    if (!opts.variable_order.empty()) {
        if (opts.variable_order.size() != n)
            throw Error(ErrorCode::BadInput, "variable_order must be a permutation of the variables");
        order = opts.variable_order;
    }

    std::vector<NodeId> assigned(n, -1);

    auto coherent_adj = [&](std::size_t var, NodeId value) {
        for (const SupportConstraint& c : net.support) {
            if (c.u == var && assigned[c.v] >= 0) {
                if (!detail::support_satisfied(g, c, value, assigned[c.v]))
                    return false;
            } else if (c.v == var && assigned[c.u] >= 0) {
                if (!detail::support_satisfied(g, c, assigned[c.u], value))
                    return false;
            }
        }
        return true;
    };
    auto coherent_all = [&](std::size_t var, NodeId value) {
        if (!net.alldiff)
            return true;
        for (std::size_t i = 0; i < n; ++i)
            if (i != var && assigned[i] == value)
                return false;
        return true;
    };

    if (opts.tree)
        opts.tree->nodes.push_back({-1, 0, -1}); // root: the empty assignment

    bool stop = false;
    std::function<void(std::size_t, int)> descend = [&](std::size_t depth, int tree_parent) {
        if (stop)
            return;
        if (depth == n) {
            Match m;
            for (std::size_t i = 0; i < n; ++i)
                m[net.vars[i]] = assigned[i];
            out.push_back(std::move(m));
            if (opts.max_matches && out.size() >= opts.max_matches)
                stop = true;
            return;
        }
        const std::size_t var = order[depth];
        std::vector<NodeId> local = net.domains[var];
        for (auto it = local.begin(); it != local.end() && !stop;) {
            NodeId value = *it;
            if (!coherent_adj(var, value) || !coherent_all(var, value)) {
                it = local.erase(it); // delete from the local domain copy
                continue;
            }
            assigned[var] = value;
            int tree_id = -1;
            if (opts.tree) {
                opts.tree->nodes.push_back({tree_parent, depth + 1, value});
                tree_id = static_cast<int>(opts.tree->nodes.size()) - 1;
            }
            descend(depth + 1, tree_id);
            assigned[var] = -1;
            ++it;
        }
        // empty local domain: the branch is inconsistent, return to the parent
    };
    descend(0, opts.tree ? 0 : -1);
    return out;
}

/// Independent check for resolve_csp: enumerate all injective variable ->
/// node maps over the compatible nodes and test every pattern edge against a
/// flat scan-built edge table. Guarded against combinatorial blowup.
inline std::vector<Match> brute_force_match(const STGraph& g, const Pattern& pattern, int anchor,
                                            std::uint64_t guard = 1000000)
{
    const bool temporal = !pattern.is_spatial();
    const int needed_layers = temporal ? 2 : 1;
    if (anchor < 0 || anchor + needed_layers > g.layer_count())
        throw Error(ErrorCode::BadAnchor, "anchor " + std::to_string(anchor) + " out of range");

    const std::size_t n = pattern.vertices.size();
    std::vector<std::vector<NodeId>> candidates(n);
    std::uint64_t combinations = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const PatternVertex& v = pattern.vertices[i];
        for (const STNode& node : g.nodes())
            if (detail::vertex_compatible(node, v, anchor + v.layer))
                candidates[i].push_back(node.node_id);
        std::sort(candidates[i].begin(), candidates[i].end());
        combinations *= std::max<std::uint64_t>(candidates[i].size(), 1);
        if (combinations > guard)
            throw Error(ErrorCode::TooLarge, "more than " + std::to_string(guard) + " candidate maps");
    }

    // Flat (src, dst, category) table; labels checked per hit.
    struct FlatEdge {
        NodeId src, dst;
        EdgeCategory category;
        RelationLabel relation;
        FiliationMode mode;
    };
    std::vector<FlatEdge> table;
    for (const STEdge& e : g.edges())
        table.push_back({e.src, e.dst, e.kind.category, e.kind.relation, e.kind.mode});
    std::sort(table.begin(), table.end(), [](const FlatEdge& a, const FlatEdge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });

    auto edge_ok = [&](NodeId a, NodeId b, const PatternEdge& pe) {
        auto scan = [&](NodeId s, NodeId d, bool flipped) {
            FlatEdge probe{s, d, EdgeCategory::Spatial, {}, {}};
            auto lo = std::lower_bound(table.begin(), table.end(), probe,
                                       [](const FlatEdge& x, const FlatEdge& y) {
                                           return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
                                       });
            for (; lo != table.end() && lo->src == s && lo->dst == d; ++lo) {
                if (lo->category != pe.category)
                    continue;
                if (pe.category == EdgeCategory::Filiation) {
                    if (!pe.modes.empty() &&
                        std::find(pe.modes.begin(), pe.modes.end(), lo->mode) == pe.modes.end())
                        continue;
                } else {
                    RelationLabel oriented = flipped ? lo->relation.converse() : lo->relation;
                    if (!pe.relations.empty() &&
                        std::find(pe.relations.begin(), pe.relations.end(), oriented) == pe.relations.end())
                        continue;
                }
                if (pe.compare) {
                    const AttrMap& src_attrs = g.node(a).attrs;
                    const AttrMap& dst_attrs = g.node(b).attrs;
                    auto pa = dst_attrs.find(pe.compare->attr);
                    auto pb = src_attrs.find(pe.compare->attr);
                    if (pa == dst_attrs.end() || pb == src_attrs.end() ||
                        !cmp_eval(pe.compare->op, pa->second, pb->second))
                        continue;
                }
                return true;
            }
            return false;
        };
        if (scan(a, b, false))
            return true;
        return pe.category == EdgeCategory::Spatial && scan(b, a, true);
    };

    std::vector<Match> out;
    std::vector<NodeId> pick(n, -1);
    std::function<void(std::size_t)> enumerate = [&](std::size_t depth) {
        if (depth == n) {
            for (const PatternEdge& pe : pattern.edges) {
                std::size_t iu = 0, iv = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (pattern.vertices[i].var == pe.u)
                        iu = i;
                    if (pattern.vertices[i].var == pe.v)
                        iv = i;
                }
                if (!edge_ok(pick[iu], pick[iv], pe))
                    return;
            }
            Match m;
            for (std::size_t i = 0; i < n; ++i)
                m[pattern.vertices[i].var] = pick[i];
            out.push_back(std::move(m));
            return;
        }
        for (NodeId c : candidates[depth]) {
            bool used = false;
            for (std::size_t i = 0; i < depth; ++i)
                if (pick[i] == c)
                    used = true;
            if (used)
                continue;
            pick[depth] = c;
            enumerate(depth + 1);
            pick[depth] = -1;
        }
    };
    enumerate(0);
    return out;
}

/// Match a pattern at every admissible anchor: each layer for spatial
/// patterns, each consecutive layer pair for temporal ones. Distinct anchors
/// can be searched by a small worker pool; the result is independent of the
/// thread count.
inline std::map<int, std::vector<Match>> match_all_anchors(const STGraph& g, const Pattern& pattern,
                                                           const ResolveOptions& opts = {}, int threads = 1)
{
    std::vector<int> anchors;
    const int last = pattern.is_spatial() ? g.layer_count() : g.layer_count() - 1;
    for (int t = 0; t < last; ++t)
        anchors.push_back(t);

    std::map<int, std::vector<Match>> out;
    if (threads <= 1 || anchors.size() <= 1 || opts.tree) {
        for (int t : anchors)
            out.emplace(t, resolve_csp(modelize_csp(g, pattern, t), g, opts));
        return out;
    }
    std::vector<std::future<std::vector<Match>>> jobs;
    for (int t : anchors)
        jobs.push_back(std::async(std::launch::async, [&, t] {
            ResolveOptions local = opts;
            local.tree = nullptr;
            return resolve_csp(modelize_csp(g, pattern, t), g, local);
        }));
    for (std::size_t i = 0; i < anchors.size(); ++i)
        out.emplace(anchors[i], jobs[i].get());
    return out;
}

} // namespace stgmine
