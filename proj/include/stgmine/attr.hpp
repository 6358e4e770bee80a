#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "stgmine/errors.hpp"

namespace stgmine {

using AttrMap = std::map<std::string, double>;

enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };

inline bool cmp_eval(Cmp op, double lhs, double rhs)
{
    switch (op) {
        case Cmp::Lt: return lhs < rhs;
        case Cmp::Le: return lhs <= rhs;
        case Cmp::Gt: return lhs > rhs;
        case Cmp::Ge: return lhs >= rhs;
        case Cmp::Eq: return lhs == rhs;
        case Cmp::Ne: return lhs != rhs;
    }
    return false;
}

inline std::string_view to_string(Cmp op)
{
    switch (op) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Gt: return ">";
        case Cmp::Ge: return ">=";
        case Cmp::Eq: return "==";
        case Cmp::Ne: return "!=";
    }
    return "?";
}

inline std::optional<Cmp> cmp_from_string(std::string_view text)
{
    if (text == "<") return Cmp::Lt;
    if (text == "<=") return Cmp::Le;
    if (text == ">") return Cmp::Gt;
    if (text == ">=") return Cmp::Ge;
    if (text == "==") return Cmp::Eq;
    if (text == "!=") return Cmp::Ne;
    return std::nullopt;
}

/// Unary predicate over a named numeric attribute, e.g. area >= 4.
/// A missing attribute never satisfies the predicate.
struct AttrPredicate {
    std::string attr;
    Cmp op = Cmp::Ge;
    double value = 0.0;

    bool holds(const AttrMap& attrs) const
    {
        auto it = attrs.find(attr);
        if (it == attrs.end())
            return false;
        return cmp_eval(op, it->second, value);
    }

    friend bool operator==(const AttrPredicate&, const AttrPredicate&) = default;
};

} // namespace stgmine
