#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "stgmine/io.hpp"
#include "stgmine/pattern.hpp"

using namespace stgmine;

TEST_CASE("validate_pattern collects violations", "[pattern]")
{
    SECTION("a single layer-0 vertex is a valid pattern")
    {
        Pattern p;
        p.name = "dot";
        p.vertices = {{"a", 0, std::nullopt, {}}};
        REQUIRE(validate_pattern(p).empty());
    }
    SECTION("spatial edge across layers")
    {
        Pattern p;
        p.vertices = {{"a", 0, std::nullopt, {}}, {"b", 1, std::nullopt, {}}};
        p.edges = {{"a", "b", EdgeCategory::Spatial, {}, {}, std::nullopt}};
        auto issues = validate_pattern(p);
        REQUIRE(issues.size() == 1);
        REQUIRE(issues[0].code == "LayerViolation");
    }
    SECTION("duplicate variable name")
    {
        Pattern p;
        p.vertices = {{"a", 0, std::nullopt, {}}, {"a", 0, std::nullopt, {}}};
        auto issues = validate_pattern(p);
        REQUIRE(issues.size() == 1);
        REQUIRE(issues[0].code == "DuplicateName");
    }
    SECTION("temporal edges must go from layer 0 to layer 1")
    {
        Pattern p;
        p.vertices = {{"a", 1, std::nullopt, {}}, {"b", 0, std::nullopt, {}}};
        p.edges = {{"a", "b", EdgeCategory::Filiation, {}, {}, std::nullopt}};
        auto issues = validate_pattern(p);
        REQUIRE(issues.size() == 1);
        REQUIRE(issues[0].code == "LayerViolation");
    }
    SECTION("unknown vertex and bad layer are reported together")
    {
        Pattern p;
        p.vertices = {{"a", 3, std::nullopt, {}}};
        p.edges = {{"a", "ghost", EdgeCategory::Spatial, {}, {}, std::nullopt}};
        auto issues = validate_pattern(p);
        std::set<std::string> codes;
        for (const PatternIssue& issue : issues)
            codes.insert(issue.code);
        REQUIRE(codes == std::set<std::string>{"BadLayer", "UnknownVertex"});
    }
}

TEST_CASE("the catalog", "[pattern]")
{
    auto patterns = catalog();
    REQUIRE(patterns.size() == 6);

    SECTION("every entry validates")
    {
        for (const Pattern& p : patterns) {
            INFO(p.name);
            REQUIRE(validate_pattern(p).empty());
        }
    }
    SECTION("spatial-triangle has 3 vertices and 3 spatial edges")
    {
        const Pattern* triangle = find_catalog_pattern(patterns, "spatial-triangle");
        REQUIRE(triangle != nullptr);
        REQUIRE(triangle->vertices.size() == 3);
        REQUIRE(triangle->edges.size() == 3);
        for (const PatternEdge& e : triangle->edges)
            REQUIRE(e.category == EdgeCategory::Spatial);
        REQUIRE(triangle->is_spatial());
    }
    SECTION("continuation-edge is one continuation across the layer pair")
    {
        const Pattern* p = find_catalog_pattern(patterns, "continuation-edge");
        REQUIRE(p != nullptr);
        REQUIRE(p->edges.size() == 1);
        REQUIRE(p->edges[0].category == EdgeCategory::Filiation);
        REQUIRE(p->edges[0].modes == std::vector<FiliationMode>{FiliationMode::Continuation});
        REQUIRE(p->find_vertex(p->edges[0].u)->layer == 0);
        REQUIRE(p->find_vertex(p->edges[0].v)->layer == 1);
        REQUIRE_FALSE(p->is_spatial());
    }
    SECTION("growth compares the area across its continuation edge")
    {
        const Pattern* p = find_catalog_pattern(patterns, "growth");
        REQUIRE(p != nullptr);
        REQUIRE(p->edges[0].compare.has_value());
        REQUIRE(p->edges[0].compare->attr == "area");
        REQUIRE(p->edges[0].compare->op == Cmp::Gt);
    }
    SECTION("every entry is connected")
    {
        for (const Pattern& p : patterns) {
            std::set<std::string> reached{p.vertices[0].var};
            bool grew = true;
            while (grew) {
                grew = false;
                for (const PatternEdge& e : p.edges) {
                    if (reached.contains(e.u) && !reached.contains(e.v)) {
                        reached.insert(e.v);
                        grew = true;
                    }
                    if (reached.contains(e.v) && !reached.contains(e.u)) {
                        reached.insert(e.u);
                        grew = true;
                    }
                }
            }
            INFO(p.name);
            REQUIRE(reached.size() == p.vertices.size());
        }
    }
}

TEST_CASE("pattern serialization round-trips", "[pattern][io]")
{
    SECTION("the whole catalog")
    {
        for (const Pattern& p : catalog()) {
            INFO(p.name);
            Pattern back = parse_pattern(serialize_pattern(p));
            REQUIRE(back == p);
        }
    }
    SECTION("fuzzed patterns")
    {
        std::mt19937_64 rng(31337);
        auto roll = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
        for (int trial = 0; trial < 200; ++trial) {
            Pattern p;
            p.name = "fuzz" + std::to_string(trial);
            int vertex_count = 1 + roll(4);
            for (int i = 0; i < vertex_count; ++i) {
                PatternVertex v;
                v.var = std::string(1, static_cast<char>('a' + i));
                v.layer = roll(2);
                if (roll(2))
                    v.class_label = "building";
                if (roll(3) == 0)
                    v.preds.push_back({"area", Cmp::Ge, static_cast<double>(roll(10))});
                p.vertices.push_back(v);
            }
            for (int i = 0; i + 1 < vertex_count; ++i) {
                const PatternVertex& u = p.vertices[static_cast<std::size_t>(i)];
                const PatternVertex& v = p.vertices[static_cast<std::size_t>(i + 1)];
                PatternEdge e;
                if (u.layer == v.layer) {
                    e.u = u.var;
                    e.v = v.var;
                    e.category = EdgeCategory::Spatial;
                    if (roll(2))
                        e.relations = {RelationLabel::meets(), RelationLabel::near(2)};
                } else {
                    e.u = u.layer == 0 ? u.var : v.var;
                    e.v = u.layer == 0 ? v.var : u.var;
                    e.category = roll(2) ? EdgeCategory::Filiation : EdgeCategory::SpatioTemporal;
                    if (e.category == EdgeCategory::Filiation && roll(2))
                        e.modes = {FiliationMode::Derivation};
                    if (e.category == EdgeCategory::SpatioTemporal && roll(2))
                        e.relations = {RelationLabel::overlaps(), RelationLabel::equals()};
                    if (roll(4) == 0)
                        e.compare = AttrCompare{"area", Cmp::Lt};
                }
                p.edges.push_back(e);
            }
            INFO("trial " << trial);
            REQUIRE(validate_pattern(p).empty());
            REQUIRE(parse_pattern(serialize_pattern(p)) == p);
        }
    }
}

TEST_CASE("pattern parsing errors", "[pattern][io]")
{
    SECTION("malformed document")
    {
        try {
            parse_pattern("{\"schema_version\":1,\"vertices\":[{\"layer\":0}],\"edges\":[]}");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::ParseError); // missing field "var"
        }
    }
    SECTION("unknown relation label")
    {
        std::string text = R"({"schema_version":1,"name":"x",
            "vertices":[{"var":"a","layer":0},{"var":"b","layer":0}],
            "edges":[{"u":"a","v":"b","category":"spatial","relations":["adjacent"]}]})";
        try {
            parse_pattern(text);
            FAIL("expected ParseError");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::ParseError);
        }
    }
    SECTION("structurally valid but inconsistent pattern")
    {
        std::string text = R"({"schema_version":1,"name":"x",
            "vertices":[{"var":"a","layer":0},{"var":"b","layer":1}],
            "edges":[{"u":"a","v":"b","category":"spatial"}]})";
        try {
            parse_pattern(text);
            FAIL("expected validation failure");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::BadInput);
            REQUIRE(std::string(e.what()).find("LayerViolation") != std::string::npos);
        }
    }
    SECTION("missing schema version")
    {
        try {
            parse_pattern("{\"vertices\":[],\"edges\":[]}");
            FAIL("expected SchemaVersionError");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::SchemaVersionError);
        }
    }
}
