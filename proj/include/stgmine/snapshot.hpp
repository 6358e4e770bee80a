#pragma once

#include <map>
#include <string>
#include <vector>

#include "stgmine/errors.hpp"
#include "stgmine/region.hpp"

namespace stgmine {

/// One labeled-region scene at one instant of the series.
struct Snapshot {
    std::string time_label;
    std::vector<Region> regions;

    const Region* find_region(int region_id) const
    {
        for (const Region& r : regions)
            if (r.id() == region_id)
                return &r;
        return nullptr;
    }

    std::map<int, Region> regions_by_id() const
    {
        std::map<int, Region> out;
        for (const Region& r : regions)
            out.emplace(r.id(), r);
        return out;
    }

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Region ids must be unique. Cheap enough to guard every solver entry point.
inline void check_unique_region_ids(const Snapshot& snapshot)
{
    std::map<int, bool> seen;
    for (const Region& r : snapshot.regions)
        if (!seen.emplace(r.id(), true).second)
            throw Error(ErrorCode::BadInput, "snapshot '" + snapshot.time_label + "': duplicate region_id " +
                                                 std::to_string(r.id()));
}

/// Region ids must be unique and cells disjoint across regions.
/// Throws ParseError naming the offending regions.
inline void check_snapshot(const Snapshot& snapshot)
{
    std::map<int, int> owner_of_id;
    std::map<Cell, int> owner_of_cell;
    for (const Region& r : snapshot.regions) {
        if (!owner_of_id.emplace(r.id(), r.id()).second)
            throw Error(ErrorCode::ParseError, "snapshot '" + snapshot.time_label + "': duplicate region_id " +
                                                   std::to_string(r.id()));
        for (const Cell& c : r.cells()) {
            auto [it, inserted] = owner_of_cell.emplace(c, r.id());
            if (!inserted)
                throw Error(ErrorCode::ParseError,
                            "snapshot '" + snapshot.time_label + "': cell (" + std::to_string(c.row) + "," +
                                std::to_string(c.col) + ") belongs to both region " + std::to_string(it->second) +
                                " and region " + std::to_string(r.id()));
        }
    }
}

} // namespace stgmine
