#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stgmine/attr.hpp"
#include "stgmine/errors.hpp"
#include "stgmine/region.hpp"

namespace stgmine {

/// One variable of the identification CSP: a named part of the complex
/// object with its required class and attribute predicates.
struct PartVar {
    std::string name;
    std::string class_label;
    std::vector<AttrPredicate> preds;

    friend bool operator==(const PartVar&, const PartVar&) = default;
};

/// Binary constraint between two parts: the relation computed on their
/// regions (in a -> b direction) must be one of the allowed labels.
struct RelationConstraintSpec {
    std::string a;
    std::string b;
    std::vector<RelationLabel> allowed;

    friend bool operator==(const RelationConstraintSpec&, const RelationConstraintSpec&) = default;
};

/// Expert description of a complex object: its parts and the spatial
/// relations that must hold between them.
struct ObjectTemplate {
    std::vector<PartVar> parts;
    std::vector<RelationConstraintSpec> relations;

    const PartVar* find_part(const std::string& name) const
    {
        for (const PartVar& p : parts)
            if (p.name == name)
                return &p;
        return nullptr;
    }

    friend bool operator==(const ObjectTemplate&, const ObjectTemplate&) = default;
};

inline void check_template(const ObjectTemplate& tmpl)
{
    if (tmpl.parts.empty())
        throw Error(ErrorCode::BadInput, "template has no parts");
    std::set<std::string> names;
    for (const PartVar& p : tmpl.parts)
        if (!names.insert(p.name).second)
            throw Error(ErrorCode::BadInput, "duplicate part name '" + p.name + "'");
    for (const RelationConstraintSpec& r : tmpl.relations) {
        if (!names.contains(r.a) || !names.contains(r.b))
            throw Error(ErrorCode::BadInput, "relation references unknown part '" +
                                                 (names.contains(r.a) ? r.b : r.a) + "'");
        if (r.a == r.b)
            throw Error(ErrorCode::BadInput, "relation on a single part '" + r.a + "'");
        if (r.allowed.empty())
            throw Error(ErrorCode::BadInput, "relation " + r.a + " -> " + r.b + " allows no label");
    }
}

/// part name -> region id. Solutions of the identification CSP.
using IdAssignment = std::map<std::string, int>;

inline bool is_injective(const IdAssignment& assignment)
{
    std::set<int> values;
    for (const auto& [part, region] : assignment)
        if (!values.insert(region).second)
            return false;
    return true;
}

} // namespace stgmine
