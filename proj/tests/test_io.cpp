#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include "stgmine/io.hpp"
#include "stgmine/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stgmine;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("stgmine_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("snapshot files", "[io]")
{
    TempDir dir;

    SECTION("round trip")
    {
        Snapshot s = fixtures::demo_snapshot_2015();
        save_snapshot(s, dir.path / "s.json");
        REQUIRE(load_snapshot(dir.path / "s.json") == s);
    }
    SECTION("overlapping cells name both regions")
    {
        std::string text = R"({"schema_version":1,"time":"t0","regions":[
            {"region_id":1,"class_label":"a","cells":[[0,0],[0,1]]},
            {"region_id":2,"class_label":"b","cells":[[0,1]]}]})";
        try {
            snapshot_from_json(Json::parse(text), "inline");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::ParseError);
            REQUIRE(std::string(e.what()).find("region 1") != std::string::npos);
            REQUIRE(std::string(e.what()).find("region 2") != std::string::npos);
        }
    }
    SECTION("duplicate region ids are rejected")
    {
        std::string text = R"({"schema_version":1,"time":"t0","regions":[
            {"region_id":1,"class_label":"a","cells":[[0,0]]},
            {"region_id":1,"class_label":"b","cells":[[5,5]]}]})";
        REQUIRE_THROWS_AS(snapshot_from_json(Json::parse(text), "inline"), Error);
    }
    SECTION("a directory loads as an ordered series")
    {
        save_snapshot(fixtures::demo_snapshot_2015(), dir.path / "0_2015.json");
        save_snapshot(fixtures::demo_snapshot_2017(), dir.path / "1_2017.json");
        save_snapshot(fixtures::demo_snapshot_2019(), dir.path / "2_2019.json");
        auto series = load_snapshot_series(dir.path);
        REQUIRE(series.size() == 3);
        REQUIRE(series[0].time_label == "2015");
        REQUIRE(series[1].time_label == "2017");
        REQUIRE(series[2].time_label == "2019");
        // layer indices follow the series order when a graph is built
        STGraph g = construct_stg(series, {{}, {}, {}});
        REQUIRE(g.timestamps()[0] == TimeStamp{0, "2015"});
        REQUIRE(g.timestamps()[2] == TimeStamp{2, "2019"});
    }
    SECTION("missing path")
    {
        REQUIRE_THROWS_AS(load_snapshot_series(dir.path / "nowhere"), Error);
    }
}

TEST_CASE("stg files", "[io]")
{
    TempDir dir;
    STGraph g = fixtures::demo_stg();

    SECTION("round trip preserves structure")
    {
        save_stg(g, dir.path / "g.json");
        REQUIRE(load_stg(dir.path / "g.json") == g);
    }
    SECTION("serialization is byte-deterministic")
    {
        REQUIRE(stg_to_json(g).dump(2) == stg_to_json(fixtures::demo_stg()).dump(2));
    }
    SECTION("schema version is enforced")
    {
        Json doc = stg_to_json(g);
        doc["schema_version"] = 2;
        try {
            stg_from_json(doc, "inline");
            FAIL("expected SchemaVersionError");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::SchemaVersionError);
        }
    }
    SECTION("corrupted graphs load and fail validation instead")
    {
        Json doc = stg_to_json(g);
        doc["edges"][0]["src"] = 999; // dangling endpoint
        STGraph bad = stg_from_json(doc, "inline");
        auto violations = validate(bad);
        REQUIRE_FALSE(violations.empty());
        REQUIRE(violations[0].code == "UnknownNode");
    }
}

TEST_CASE("template and assignment files", "[io]")
{
    TempDir dir;

    SECTION("template round trip")
    {
        ObjectTemplate tmpl = fixtures::urban_block_template();
        save_template(tmpl, dir.path / "t.json");
        REQUIRE(load_template(dir.path / "t.json") == tmpl);
    }
    SECTION("assignments round trip")
    {
        std::vector<LayerAssignment> assignments = {
            {0, "2015", {{"block", 1}, {"road", 2}}},
            {1, "2017", {{"block", 1}, {"road", 2}}},
        };
        save_assignments(assignments, dir.path / "a.json");
        REQUIRE(load_assignments(dir.path / "a.json") == assignments);
    }
    SECTION("invalid templates are rejected on load")
    {
        std::string text = R"({"schema_version":1,"parts":[{"name":"a","class_label":"x"}],
            "relations":[{"a":"a","b":"ghost","allowed":["meets"]}]})";
        REQUIRE_THROWS_AS(template_from_json(Json::parse(text), "inline"), Error);
    }
}

TEST_CASE("match and event files", "[io]")
{
    TempDir dir;
    STGraph g = fixtures::demo_stg();

    SECTION("single anchor matches document")
    {
        auto matches = resolve_csp(modelize_csp(g, catalog()[0], 0), g);
        Json doc = matches_to_json("spatial-edge", 0, matches);
        REQUIRE(doc["pattern"] == "spatial-edge");
        REQUIRE(doc["anchor"] == 0);
        REQUIRE(doc["assignments"].size() == matches.size());
    }
    SECTION("all-anchor matches document")
    {
        auto per_anchor = match_all_anchors(g, catalog()[0]);
        Json doc = matches_to_json("spatial-edge", per_anchor);
        REQUIRE(doc["anchors"].size() == per_anchor.size());
    }
    SECTION("events document")
    {
        auto events = classify_changes(g);
        Json doc = events_to_json(events);
        REQUIRE(doc["events"].size() == events.size());
        REQUIRE(doc["events"][0].contains("kind"));
        REQUIRE(doc["events"][0].contains("anchor"));
        REQUIRE(doc["events"][0].contains("nodes"));
    }
}

TEST_CASE("csv outputs", "[io]")
{
    SECTION("frequency csv has the fixed column order")
    {
        FrequencyTable table{{"spatial-edge", 0, 4, 0.5}};
        std::string csv = frequency_csv(table);
        REQUIRE(csv.starts_with("pattern,anchor,count,support\n"));
        REQUIRE(csv.find("spatial-edge,0,4,0.5") != std::string::npos);
    }
    SECTION("bench csv has the fixed column order")
    {
        std::vector<BenchRow> rows{{150, 320, "spatial-triangle", 3, 42, 1.25}};
        std::string csv = bench_csv(rows);
        REQUIRE(csv.starts_with("nodes,edges,pattern,anchor_count,match_count,time_ms\n"));
        REQUIRE(csv.find("150,320,spatial-triangle,3,42,1.25") != std::string::npos);
    }
}

TEST_CASE("fuzzed round trips are identity", "[io][property]")
{
    std::mt19937_64 rng(1234);

    SECTION("snapshots")
    {
        for (int trial = 0; trial < 60; ++trial) {
            // Snapshot files demand pairwise-disjoint regions; draw them on a
            // coarse grid of non-overlapping tiles.
            Snapshot s;
            s.time_label = "t" + std::to_string(trial);
            int tiles = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < tiles; ++i) {
                std::vector<Cell> cells;
                int base_row = 10 * i;
                int rows = 1 + static_cast<int>(rng() % 3);
                int cols = 1 + static_cast<int>(rng() % 5);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c)
                        cells.push_back({base_row + r, c});
                AttrMap attrs;
                if (rng() % 2)
                    attrs["height"] = static_cast<double>(rng() % 50);
                s.regions.emplace_back(i + 1, i % 2 ? "building" : "road", std::move(cells), std::move(attrs));
            }
            INFO("trial " << trial);
            REQUIRE(snapshot_from_json(snapshot_to_json(s), "fuzz") == s);
        }
    }
    SECTION("graphs")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SynthConfig config;
            config.nodes_per_layer = 5 + static_cast<int>(seed % 10);
            config.spatial_edges_per_layer = 2 * config.nodes_per_layer;
            config.merge_fraction = 0.2;
            config.seed = seed;
            STGraph g = generate_synthetic_stg(config);
            INFO("seed " << seed);
            REQUIRE(stg_from_json(stg_to_json(g), "fuzz") == g);
        }
    }
}
