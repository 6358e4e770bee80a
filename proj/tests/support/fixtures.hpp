#pragma once

// Shared hand-built scenes: a three-snapshot "urban block" series whose
// identification solution is unique, and a scripted evolution graph with a
// known ground-truth event list.

#include <string>
#include <vector>

#include "stgmine/stgmine.hpp"

namespace fixtures {

using namespace stgmine;

inline std::vector<Cell> rect(int row0, int col0, int rows, int cols)
{
    std::vector<Cell> cells;
    for (int r = row0; r < row0 + rows; ++r)
        for (int c = col0; c < col0 + cols; ++c)
            cells.push_back({r, c});
    return cells;
}

/// Six regions: two buildings, two vegetation patches, one road, one pond.
/// Only building 1 meets the road, and only vegetation 4 meets building 1,
/// so the urban-block template below has a unique solution.
///
///   rows 0..1:  building 1 (cols 0..1)   vegetation 4 (cols 2..3)
///   row  2:     road 2 (cols 0..5)
///   rows 3..4:  building 3 (cols 4..5)   water 6 (cols 0..1)  veg 5 (col 3)
inline Snapshot demo_snapshot_2015()
{
    Snapshot s;
    s.time_label = "2015";
    s.regions.emplace_back(1, "building", rect(0, 0, 2, 2));
    s.regions.emplace_back(2, "road", rect(2, 0, 1, 6));
    s.regions.emplace_back(3, "building", rect(4, 4, 2, 2));
    s.regions.emplace_back(4, "vegetation", rect(0, 2, 2, 2));
    s.regions.emplace_back(5, "vegetation", rect(4, 0, 1, 1));
    s.regions.emplace_back(6, "water", rect(6, 0, 2, 2));
    return s;
}

/// 2017: the block building grows one column into former vegetation; the
/// garden shrinks accordingly; everything else persists.
inline Snapshot demo_snapshot_2017()
{
    Snapshot s;
    s.time_label = "2017";
    s.regions.emplace_back(1, "building", rect(0, 0, 2, 3));
    s.regions.emplace_back(2, "road", rect(2, 0, 1, 6));
    s.regions.emplace_back(3, "building", rect(4, 4, 2, 2));
    s.regions.emplace_back(4, "vegetation", rect(0, 3, 2, 1));
    s.regions.emplace_back(5, "vegetation", rect(4, 0, 1, 1));
    s.regions.emplace_back(6, "water", rect(6, 0, 2, 2));
    return s;
}

/// 2019: the garden is gone; a new vegetation strip (id 7) appears next to
/// the grown building and meets it.
inline Snapshot demo_snapshot_2019()
{
    Snapshot s;
    s.time_label = "2019";
    s.regions.emplace_back(1, "building", rect(0, 0, 2, 3));
    s.regions.emplace_back(2, "road", rect(2, 0, 1, 6));
    s.regions.emplace_back(3, "building", rect(4, 4, 2, 2));
    s.regions.emplace_back(7, "vegetation", rect(0, 3, 2, 2));
    s.regions.emplace_back(5, "vegetation", rect(4, 0, 1, 1));
    s.regions.emplace_back(6, "water", rect(6, 0, 2, 2));
    return s;
}

inline std::vector<Snapshot> demo_series()
{
    return {demo_snapshot_2015(), demo_snapshot_2017(), demo_snapshot_2019()};
}

/// Urban block: a building that meets the road and a garden that meets the
/// building. Unique solution on every demo snapshot: block=1, road=2,
/// garden=4 (2015/2017) or garden=7 (2019).
inline ObjectTemplate urban_block_template()
{
    ObjectTemplate tmpl;
    tmpl.parts = {{"block", "building", {AttrPredicate{"area", Cmp::Ge, 4.0}}},
                  {"road", "road", {}},
                  {"garden", "vegetation", {}}};
    tmpl.relations = {{"block", "road", {RelationLabel::meets()}},
                      {"garden", "block", {RelationLabel::meets()}}};
    return tmpl;
}

/// The demo STG: three layers built from the demo series with the unique
/// per-layer identification.
inline STGraph demo_stg()
{
    std::vector<IdAssignment> assignments = {
        {{"block", 1}, {"road", 2}, {"garden", 4}},
        {{"block", 1}, {"road", 2}, {"garden", 4}},
        {{"block", 1}, {"road", 2}, {"garden", 7}},
    };
    return construct_stg(demo_series(), assignments);
}

/// A scripted evolution graph whose change events are known by construction.
/// Layers t0..t2, areas in attrs:
///   block:   t0 -> t1 -> t2 continuation, growing each step
///   field:   t0 -> t1 continuation (equal area), then splits into two
///            fresh plots at t2 (2 derivation children)
///   pondA/pondB: merge into lake at t1 (2 derivation edges), the lake then
///            continues to t2 shrinking
///   shed:    exists only at t0 (disappearance)
///   tower:   appears at t1 and continues to t2 (equal area)
struct ScriptedFixture {
    STGraph graph;
    std::vector<ChangeEvent> expected;
};

inline ScriptedFixture scripted_urban_growth()
{
    STGraph g({"t0", "t1", "t2"});
    auto node = [&](const std::string& object, int t, const std::string& cls, double area) {
        return g.add_node(object, t, cls, {{"area", area}});
    };

    NodeId block0 = node("block", 0, "building", 4);
    NodeId field0 = node("field", 0, "vegetation", 9);
    NodeId pond_a0 = node("pondA", 0, "water", 2);
    NodeId pond_b0 = node("pondB", 0, "water", 3);
    NodeId shed0 = node("shed", 0, "building", 1);

    NodeId block1 = node("block", 1, "building", 6);
    NodeId field1 = node("field", 1, "vegetation", 9);
    NodeId lake1 = node("lake", 1, "water", 5);
    NodeId tower1 = node("tower", 1, "building", 2);

    NodeId block2 = node("block", 2, "building", 8);
    NodeId plot_a2 = node("plotA", 2, "vegetation", 4);
    NodeId plot_b2 = node("plotB", 2, "vegetation", 5);
    NodeId lake2 = node("lake", 2, "water", 4);
    NodeId tower2 = node("tower", 2, "building", 2);

    g.add_edge(block0, block1, EdgeKind::continuation());
    g.add_edge(field0, field1, EdgeKind::continuation());
    g.add_edge(pond_a0, lake1, EdgeKind::derivation());
    g.add_edge(pond_b0, lake1, EdgeKind::derivation());
    g.add_edge(block1, block2, EdgeKind::continuation());
    g.add_edge(field1, plot_a2, EdgeKind::derivation());
    g.add_edge(field1, plot_b2, EdgeKind::derivation());
    g.add_edge(lake1, lake2, EdgeKind::continuation());
    g.add_edge(tower1, tower2, EdgeKind::continuation());

    // A little same-layer structure so the graph is not filiation-only.
    g.add_edge(block0, field0, EdgeKind::spatial(RelationLabel::meets()));
    g.add_edge(block1, field1, EdgeKind::spatial(RelationLabel::meets()));

    std::vector<ChangeEvent> expected = {
        {ChangeKind::Appearance, {tower1}, 0},
        {ChangeKind::Disappearance, {shed0}, 0},
        {ChangeKind::Continuation, {block0, block1}, 0},
        {ChangeKind::Continuation, {field0, field1}, 0},
        {ChangeKind::Merge, {pond_a0, pond_b0, lake1}, 0},
        {ChangeKind::Growth, {block0, block1}, 0},
        {ChangeKind::Continuation, {block1, block2}, 1},
        {ChangeKind::Continuation, {lake1, lake2}, 1},
        {ChangeKind::Continuation, {tower1, tower2}, 1},
        {ChangeKind::Split, {field1, plot_a2, plot_b2}, 1},
        {ChangeKind::Growth, {block1, block2}, 1},
        {ChangeKind::Shrinkage, {lake1, lake2}, 1},
    };
    std::sort(expected.begin(), expected.end(),
              [](const ChangeEvent& a, const ChangeEvent& b) { return a.key() < b.key(); });
    return {std::move(g), std::move(expected)};
}

} // namespace fixtures
