#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "stgmine/attr.hpp"
#include "stgmine/errors.hpp"

namespace stgmine {

struct Cell {
    int row = 0;
    int col = 0;

    auto operator<=>(const Cell&) const = default;
};

/// Chebyshev (chessboard) distance between two cells.
inline int chebyshev(const Cell& a, const Cell& b)
{
    return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

struct BoundingBox {
    int min_row = 0, min_col = 0, max_row = 0, max_col = 0;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// A labeled connected-or-not set of grid cells. Cells are kept sorted and
/// unique; all derived quantities (area, bounding box, centroid) are computed
/// from the cells on demand so they can never drift.
class Region {
public:
    Region() = default;

    Region(int region_id, std::string class_label, std::vector<Cell> cells, AttrMap extra_attrs = {})
        : region_id_(region_id), class_label_(std::move(class_label)), cells_(std::move(cells)),
          extra_attrs_(std::move(extra_attrs))
    {
        std::sort(cells_.begin(), cells_.end());
        cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
        if (cells_.empty())
            throw Error(ErrorCode::BadInput, "region " + std::to_string(region_id_) + " has no cells");
        for (const Cell& c : cells_)
            if (c.row < 0 || c.col < 0)
                throw Error(ErrorCode::BadInput,
                            "region " + std::to_string(region_id_) + " has a negative coordinate");
    }

    int id() const { return region_id_; }
    const std::string& class_label() const { return class_label_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const AttrMap& extra_attrs() const { return extra_attrs_; }

    std::size_t area() const { return cells_.size(); }

    bool contains_cell(const Cell& c) const
    {
        return std::binary_search(cells_.begin(), cells_.end(), c);
    }

    BoundingBox bounding_box() const
    {
        BoundingBox box{cells_.front().row, cells_.front().col, cells_.front().row, cells_.front().col};
        for (const Cell& c : cells_) {
            box.min_row = std::min(box.min_row, c.row);
            box.min_col = std::min(box.min_col, c.col);
            box.max_row = std::max(box.max_row, c.row);
            box.max_col = std::max(box.max_col, c.col);
        }
        return box;
    }

    std::pair<double, double> centroid() const
    {
        double row_sum = 0.0, col_sum = 0.0;
        for (const Cell& c : cells_) {
            row_sum += c.row;
            col_sum += c.col;
        }
        return {row_sum / static_cast<double>(cells_.size()), col_sum / static_cast<double>(cells_.size())};
    }

    /// Numeric attribute lookup used by template predicates: derived
    /// quantities first, then any stored extras.
    std::optional<double> attr_value(const std::string& name) const
    {
        if (name == "area")
            return static_cast<double>(area());
        if (name == "centroid_row")
            return centroid().first;
        if (name == "centroid_col")
            return centroid().second;
        auto it = extra_attrs_.find(name);
        if (it != extra_attrs_.end())
            return it->second;
        return std::nullopt;
    }

    AttrMap all_attrs() const
    {
        AttrMap out = extra_attrs_;
        auto [crow, ccol] = centroid();
        out["area"] = static_cast<double>(area());
        out["centroid_row"] = crow;
        out["centroid_col"] = ccol;
        return out;
    }

    friend bool operator==(const Region&, const Region&) = default;

private:
    int region_id_ = 0;
    std::string class_label_;
    std::vector<Cell> cells_;
    AttrMap extra_attrs_;
};

// ---------------------------------------------------------------------------
// Relation labels
// ---------------------------------------------------------------------------

/// The closed label set for pairwise region relations. The six simple labels
/// partition all region pairs; near(d) is the one complex relation and is a
/// predicate rather than part of the partition.
struct RelationLabel {
    enum class Kind { Equals, Inside, Contains, Overlaps, Meets, Disjoint, Near };

    Kind kind = Kind::Disjoint;
    int distance = 0; // Near only

    bool is_simple() const { return kind != Kind::Near; }

    RelationLabel converse() const
    {
        if (kind == Kind::Inside)
            return {Kind::Contains, 0};
        if (kind == Kind::Contains)
            return {Kind::Inside, 0};
        return *this;
    }

    static RelationLabel equals() { return {Kind::Equals, 0}; }
    static RelationLabel inside() { return {Kind::Inside, 0}; }
    static RelationLabel contains() { return {Kind::Contains, 0}; }
    static RelationLabel overlaps() { return {Kind::Overlaps, 0}; }
    static RelationLabel meets() { return {Kind::Meets, 0}; }
    static RelationLabel disjoint() { return {Kind::Disjoint, 0}; }
    static RelationLabel near(int d) { return {Kind::Near, d}; }

    auto operator<=>(const RelationLabel&) const = default;
};

inline std::string to_string(const RelationLabel& label)
{
    switch (label.kind) {
        case RelationLabel::Kind::Equals: return "equals";
        case RelationLabel::Kind::Inside: return "inside";
        case RelationLabel::Kind::Contains: return "contains";
        case RelationLabel::Kind::Overlaps: return "overlaps";
        case RelationLabel::Kind::Meets: return "meets";
        case RelationLabel::Kind::Disjoint: return "disjoint";
        case RelationLabel::Kind::Near: return "near(" + std::to_string(label.distance) + ")";
    }
    return "?";
}

inline std::optional<RelationLabel> relation_label_from_string(std::string_view text)
{
    if (text == "equals") return RelationLabel::equals();
    if (text == "inside") return RelationLabel::inside();
    if (text == "contains") return RelationLabel::contains();
    if (text == "overlaps") return RelationLabel::overlaps();
    if (text == "meets") return RelationLabel::meets();
    if (text == "disjoint") return RelationLabel::disjoint();
    if (text.starts_with("near(") && text.ends_with(")")) {
        std::string digits(text.substr(5, text.size() - 6));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            return std::nullopt;
        return RelationLabel::near(std::stoi(digits));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Relation calculus
// ---------------------------------------------------------------------------

inline std::size_t intersection_size(const Region& a, const Region& b)
{
    std::size_t count = 0;
    auto ia = a.cells().begin(), ib = b.cells().begin();
    while (ia != a.cells().end() && ib != b.cells().end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

/// True iff some cell of a is 4-adjacent to some cell of b.
inline bool touches_4(const Region& a, const Region& b)
{
    const Region& small = a.area() <= b.area() ? a : b;
    const Region& big = a.area() <= b.area() ? b : a;
    for (const Cell& c : small.cells()) {
        if (big.contains_cell({c.row - 1, c.col}) || big.contains_cell({c.row + 1, c.col}) ||
            big.contains_cell({c.row, c.col - 1}) || big.contains_cell({c.row, c.col + 1}))
            return true;
    }
    return false;
}

/// The unique simple relation between two regions, decided by cell-set
/// algebra. Exactly one of the six labels holds for any pair.
inline RelationLabel relation(const Region& a, const Region& b)
{
    std::size_t common = intersection_size(a, b);
    if (common == a.area() && common == b.area())
        return RelationLabel::equals();
    if (common == a.area())
        return RelationLabel::inside();
    if (common == b.area())
        return RelationLabel::contains();
    if (common > 0)
        return RelationLabel::overlaps();
    if (touches_4(a, b))
        return RelationLabel::meets();
    return RelationLabel::disjoint();
}

/// |cells(a) ∩ cells(b)| / |cells(a)|.
inline double overlap_ratio(const Region& a, const Region& b)
{
    return static_cast<double>(intersection_size(a, b)) / static_cast<double>(a.area());
}

/// Complex relation: min Chebyshev distance between cell pairs <= d.
inline bool near(const Region& a, const Region& b, int d)
{
    // Bounding boxes give a cheap reject before the cell-pair scan.
    BoundingBox ba = a.bounding_box(), bb = b.bounding_box();
    int row_gap = std::max({bb.min_row - ba.max_row, ba.min_row - bb.max_row, 0});
    int col_gap = std::max({bb.min_col - ba.max_col, ba.min_col - bb.max_col, 0});
    if (std::max(row_gap, col_gap) > d)
        return false;
    for (const Cell& ca : a.cells())
        for (const Cell& cb : b.cells())
            if (chebyshev(ca, cb) <= d)
                return true;
    return false;
}

/// Does the pair (a, b) satisfy the given label? Simple labels compare
/// against the partition; near(d) evaluates the distance predicate.
inline bool relation_holds(const RelationLabel& label, const Region& a, const Region& b)
{
    if (label.is_simple())
        return relation(a, b) == label;
    return near(a, b, label.distance);
}

} // namespace stgmine
