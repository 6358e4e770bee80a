#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stgmine/attr.hpp"
#include "stgmine/stg.hpp"

namespace stgmine {

/// Pattern vertex with a relative layer: 0 for the anchor instant, 1 for the
/// following one. Class and attribute constraints are optional.
struct PatternVertex {
    std::string var;
    int layer = 0;
    std::optional<std::string> class_label;
    std::vector<AttrPredicate> preds;

    friend bool operator==(const PatternVertex&, const PatternVertex&) = default;
};

/// Comparison between the same attribute on the edge's two endpoints:
/// attr(dst) op attr(src). Lets a pattern say "area grew across this edge".
struct AttrCompare {
    std::string attr;
    Cmp op = Cmp::Gt;

    friend bool operator==(const AttrCompare&, const AttrCompare&) = default;
};

/// Pattern edge. Empty relation/mode lists accept any label of the category.
struct PatternEdge {
    std::string u;
    std::string v;
    EdgeCategory category = EdgeCategory::Spatial;
    std::vector<RelationLabel> relations; // Spatial / SpatioTemporal
    std::vector<FiliationMode> modes;     // Filiation
    std::optional<AttrCompare> compare;

    friend bool operator==(const PatternEdge&, const PatternEdge&) = default;
};

/// A relevant subgraph to detect: spatial when every vertex sits on layer 0,
/// temporal when it spans the consecutive pair {0, 1}.
struct Pattern {
    std::string name;
    std::vector<PatternVertex> vertices;
    std::vector<PatternEdge> edges;

    bool is_spatial() const
    {
        for (const PatternVertex& v : vertices)
            if (v.layer != 0)
                return false;
        return true;
    }

    const PatternVertex* find_vertex(const std::string& var) const
    {
        for (const PatternVertex& v : vertices)
            if (v.var == var)
                return &v;
        return nullptr;
    }

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct PatternIssue {
    std::string code;
    std::string message;
};

/// Collect every invariant violation instead of failing on the first.
inline std::vector<PatternIssue> validate_pattern(const Pattern& p)
{
    std::vector<PatternIssue> issues;
    std::set<std::string> names;
    for (const PatternVertex& v : p.vertices) {
        if (!names.insert(v.var).second)
            issues.push_back({"DuplicateName", "vertex '" + v.var + "' declared twice"});
        if (v.layer != 0 && v.layer != 1)
            issues.push_back({"BadLayer", "vertex '" + v.var + "' has layer " + std::to_string(v.layer)});
    }
    for (const PatternEdge& e : p.edges) {
        const PatternVertex* u = p.find_vertex(e.u);
        const PatternVertex* v = p.find_vertex(e.v);
        if (!u || !v) {
            issues.push_back({"UnknownVertex", "edge references undeclared vertex '" + (u ? e.v : e.u) + "'"});
            continue;
        }
        switch (e.category) {
            case EdgeCategory::Spatial:
                if (u->layer != v->layer)
                    issues.push_back({"LayerViolation", "spatial edge " + e.u + " -- " + e.v + " across layers"});
                if (e.u == e.v)
                    issues.push_back({"SelfLoop", "edge " + e.u + " -- " + e.v + " is a self-loop"});
                break;
            case EdgeCategory::SpatioTemporal:
            case EdgeCategory::Filiation:
                if (!(u->layer == 0 && v->layer == 1))
                    issues.push_back({"LayerViolation", std::string(to_string(e.category)) + " edge " + e.u +
                                                            " -> " + e.v + " must go from layer 0 to layer 1"});
                break;
        }
        for (const RelationLabel& l : e.relations)
            if (e.category == EdgeCategory::SpatioTemporal && !l.is_simple())
                issues.push_back({"InvalidRelation",
                                  "spatiotemporal edge " + e.u + " -> " + e.v + " allows a complex relation"});
        if (e.category == EdgeCategory::Filiation && !e.relations.empty())
            issues.push_back({"BadEdgeSpec", "filiation edge " + e.u + " -> " + e.v + " lists relation labels"});
        if (e.category != EdgeCategory::Filiation && !e.modes.empty())
            issues.push_back({"BadEdgeSpec", std::string(to_string(e.category)) + " edge " + e.u + " -> " + e.v +
                                                 " lists filiation modes"});
    }
    return issues;
}

/// The built-in catalog of change patterns.
inline std::vector<Pattern> catalog()
{
    std::vector<Pattern> out;

    {
        Pattern p;
        p.name = "spatial-edge";
        p.vertices = {{"a", 0, std::nullopt, {}}, {"b", 0, std::nullopt, {}}};
        p.edges = {{"a", "b", EdgeCategory::Spatial, {RelationLabel::meets()}, {}, std::nullopt}};
        out.push_back(p);
    }
    {
        Pattern p;
        p.name = "spatial-triangle";
        p.vertices = {{"a", 0, std::nullopt, {}}, {"b", 0, std::nullopt, {}}, {"c", 0, std::nullopt, {}}};
        p.edges = {{"a", "b", EdgeCategory::Spatial, {}, {}, std::nullopt},
                   {"b", "c", EdgeCategory::Spatial, {}, {}, std::nullopt},
                   {"a", "c", EdgeCategory::Spatial, {}, {}, std::nullopt}};
        out.push_back(p);
    }
    {
        Pattern p;
        p.name = "continuation-edge";
        p.vertices = {{"before", 0, std::nullopt, {}}, {"after", 1, std::nullopt, {}}};
        p.edges = {{"before", "after", EdgeCategory::Filiation, {}, {FiliationMode::Continuation}, std::nullopt}};
        out.push_back(p);
    }
    {
        Pattern p;
        p.name = "derivation-fan";
        p.vertices = {{"parent", 0, std::nullopt, {}}, {"child1", 1, std::nullopt, {}},
                      {"child2", 1, std::nullopt, {}}};
        p.edges = {{"parent", "child1", EdgeCategory::Filiation, {}, {FiliationMode::Derivation}, std::nullopt},
                   {"parent", "child2", EdgeCategory::Filiation, {}, {FiliationMode::Derivation}, std::nullopt}};
        out.push_back(p);
    }
    {
        Pattern p;
        p.name = "merge";
        p.vertices = {{"parent1", 0, std::nullopt, {}}, {"parent2", 0, std::nullopt, {}},
                      {"child", 1, std::nullopt, {}}};
        p.edges = {{"parent1", "child", EdgeCategory::Filiation, {}, {}, std::nullopt},
                   {"parent2", "child", EdgeCategory::Filiation, {}, {}, std::nullopt}};
        out.push_back(p);
    }
    {
        Pattern p;
        p.name = "growth";
        p.vertices = {{"before", 0, std::nullopt, {}}, {"after", 1, std::nullopt, {}}};
        p.edges = {{"before", "after", EdgeCategory::Filiation, {}, {FiliationMode::Continuation},
                    AttrCompare{"area", Cmp::Gt}}};
        out.push_back(p);
    }

    return out;
}

inline const Pattern* find_catalog_pattern(const std::vector<Pattern>& patterns, const std::string& name)
{
    for (const Pattern& p : patterns)
        if (p.name == name)
            return &p;
    return nullptr;
}

} // namespace stgmine
