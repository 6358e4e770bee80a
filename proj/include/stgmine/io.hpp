#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stgmine/analysis.hpp"
#include "stgmine/errors.hpp"
#include "stgmine/match.hpp"
#include "stgmine/object_template.hpp"
#include "stgmine/pattern.hpp"
#include "stgmine/snapshot.hpp"
#include "stgmine/stg.hpp"

namespace stgmine {

// All structured files are JSON documents with an explicit schema_version.
// Key order is fixed at write time, so identical inputs serialize to
// identical bytes. Flat tabular outputs (frequency tables, benchmark rows)
// are CSV.

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline void require_version(const Json& doc, const std::string& where)
{
    if (!doc.is_object() || !doc.contains("schema_version"))
        throw Error(ErrorCode::SchemaVersionError, where + ": missing schema_version");
    if (doc["schema_version"] != kSchemaVersion)
        throw Error(ErrorCode::SchemaVersionError,
                    where + ": unsupported schema_version " + doc["schema_version"].dump());
}

inline Json parse_document(const std::string& text, const std::string& where)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::ParseError, path.string() + ": cannot open for writing");
    out << text;
}

inline RelationLabel parse_relation_or_throw(const std::string& text, const std::string& where)
{
    auto label = relation_label_from_string(text);
    if (!label)
        throw Error(ErrorCode::ParseError, where + ": unknown relation label '" + text + "'");
    return *label;
}

inline Cmp parse_cmp_or_throw(const std::string& text, const std::string& where)
{
    auto op = cmp_from_string(text);
    if (!op)
        throw Error(ErrorCode::ParseError, where + ": unknown comparison operator '" + text + "'");
    return *op;
}

inline FiliationMode parse_mode_or_throw(const std::string& text, const std::string& where)
{
    if (text == "continuation")
        return FiliationMode::Continuation;
    if (text == "derivation")
        return FiliationMode::Derivation;
    throw Error(ErrorCode::ParseError, where + ": unknown filiation mode '" + text + "'");
}

inline Json attrs_to_json(const AttrMap& attrs)
{
    Json out = Json::object();
    for (const auto& [key, value] : attrs)
        out[key] = value;
    return out;
}

inline AttrMap attrs_from_json(const Json& j)
{
    AttrMap out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = it.value().get<double>();
    return out;
}

inline Json preds_to_json(const std::vector<AttrPredicate>& preds)
{
    Json out = Json::array();
    for (const AttrPredicate& p : preds)
        out.push_back({{"attr", p.attr}, {"op", std::string(to_string(p.op))}, {"value", p.value}});
    return out;
}

inline std::vector<AttrPredicate> preds_from_json(const Json& j, const std::string& where)
{
    std::vector<AttrPredicate> out;
    for (const Json& p : j)
        out.push_back({p.at("attr").get<std::string>(),
                       parse_cmp_or_throw(p.at("op").get<std::string>(), where), p.at("value").get<double>()});
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

inline Json snapshot_to_json(const Snapshot& snapshot)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["time"] = snapshot.time_label;
    Json regions = Json::array();
    for (const Region& r : snapshot.regions) {
        Json cells = Json::array();
        for (const Cell& c : r.cells())
            cells.push_back({c.row, c.col});
        Json region{{"region_id", r.id()}, {"class_label", r.class_label()}, {"cells", cells}};
        if (!r.extra_attrs().empty())
            region["attrs"] = detail::attrs_to_json(r.extra_attrs());
        regions.push_back(region);
    }
    doc["regions"] = regions;
    return doc;
}

inline Snapshot snapshot_from_json(const Json& doc, const std::string& where)
{
    detail::require_version(doc, where);
    Snapshot out;
    try {
        out.time_label = doc.at("time").get<std::string>();
        for (const Json& jr : doc.at("regions")) {
            std::vector<Cell> cells;
            for (const Json& jc : jr.at("cells"))
                cells.push_back({jc.at(0).get<int>(), jc.at(1).get<int>()});
            AttrMap attrs;
            if (jr.contains("attrs"))
                attrs = detail::attrs_from_json(jr["attrs"]);
            out.regions.emplace_back(jr.at("region_id").get<int>(), jr.at("class_label").get<std::string>(),
                                     std::move(cells), std::move(attrs));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    check_snapshot(out);
    return out;
}

inline void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path)
{
    detail::write_file(path, snapshot_to_json(snapshot).dump(2) + "\n");
}

inline Snapshot load_snapshot(const std::filesystem::path& path)
{
    return snapshot_from_json(detail::parse_document(detail::read_file(path), path.string()), path.string());
}

/// Load every *.json under a directory in filename order; a single file path
/// loads a one-snapshot series.
inline std::vector<Snapshot> load_snapshot_series(const std::filesystem::path& path)
{
    namespace fs = std::filesystem;
    if (fs::is_regular_file(path))
        return {load_snapshot(path)};
    if (!fs::is_directory(path))
        throw Error(ErrorCode::ParseError, path.string() + ": no such file or directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Snapshot> out;
    for (const fs::path& f : files)
        out.push_back(load_snapshot(f));
    return out;
}

// ---------------------------------------------------------------------------
// Spatiotemporal graphs
// ---------------------------------------------------------------------------

inline Json stg_to_json(const STGraph& g)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json timestamps = Json::array();
    for (const TimeStamp& t : g.timestamps())
        timestamps.push_back({{"index", t.index}, {"label", t.label}});
    doc["timestamps"] = timestamps;
    Json nodes = Json::array();
    for (const STNode& n : g.nodes())
        nodes.push_back({{"node_id", n.node_id},
                         {"object_id", n.object_id},
                         {"time", n.time},
                         {"class_label", n.class_label},
                         {"attrs", detail::attrs_to_json(n.attrs)}});
    doc["nodes"] = nodes;
    Json edges = Json::array();
    for (const STEdge& e : g.edges()) {
        Json edge{{"src", e.src}, {"dst", e.dst}, {"category", std::string(to_string(e.kind.category))}};
        if (e.kind.category == EdgeCategory::Filiation)
            edge["mode"] = std::string(to_string(e.kind.mode));
        else
            edge["relation"] = to_string(e.kind.relation);
        edges.push_back(edge);
    }
    doc["edges"] = edges;
    return doc;
}

/// Deserialization is structural only: a graph that violates the layer or
/// identity invariants still loads, so `validate` can name the violations.
inline STGraph stg_from_json(const Json& doc, const std::string& where)
{
    detail::require_version(doc, where);
    try {
        std::vector<TimeStamp> timestamps;
        for (const Json& jt : doc.at("timestamps"))
            timestamps.push_back({jt.at("index").get<int>(), jt.at("label").get<std::string>()});
        std::vector<STNode> nodes;
        for (const Json& jn : doc.at("nodes"))
            nodes.push_back({jn.at("node_id").get<int>(), jn.at("object_id").get<std::string>(),
                             jn.at("time").get<int>(), jn.at("class_label").get<std::string>(),
                             detail::attrs_from_json(jn.at("attrs"))});
        std::vector<STEdge> edges;
        for (const Json& je : doc.at("edges")) {
            std::string category = je.at("category").get<std::string>();
            EdgeKind kind;
            if (category == "spatial")
                kind = EdgeKind::spatial(
                    detail::parse_relation_or_throw(je.at("relation").get<std::string>(), where));
            else if (category == "spatiotemporal")
                kind = EdgeKind::spatio_temporal(
                    detail::parse_relation_or_throw(je.at("relation").get<std::string>(), where));
            else if (category == "filiation")
                kind = EdgeKind::filiation(
                    detail::parse_mode_or_throw(je.at("mode").get<std::string>(), where));
            else
                throw Error(ErrorCode::ParseError, where + ": unknown edge category '" + category + "'");
            edges.push_back({je.at("src").get<int>(), je.at("dst").get<int>(), kind});
        }
        return STGraph::from_parts(std::move(timestamps), std::move(nodes), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
}

inline void save_stg(const STGraph& g, const std::filesystem::path& path)
{
    detail::write_file(path, stg_to_json(g).dump(2) + "\n");
}

inline STGraph load_stg(const std::filesystem::path& path)
{
    return stg_from_json(detail::parse_document(detail::read_file(path), path.string()), path.string());
}

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

inline Json pattern_to_json(const Pattern& p)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["name"] = p.name;
    Json vertices = Json::array();
    for (const PatternVertex& v : p.vertices) {
        Json jv{{"var", v.var}, {"layer", v.layer}};
        if (v.class_label)
            jv["class_label"] = *v.class_label;
        if (!v.preds.empty())
            jv["preds"] = detail::preds_to_json(v.preds);
        vertices.push_back(jv);
    }
    doc["vertices"] = vertices;
    Json edges = Json::array();
    for (const PatternEdge& e : p.edges) {
        Json je{{"u", e.u}, {"v", e.v}, {"category", std::string(to_string(e.category))}};
        if (!e.relations.empty()) {
            Json labels = Json::array();
            for (const RelationLabel& l : e.relations)
                labels.push_back(to_string(l));
            je["relations"] = labels;
        }
        if (!e.modes.empty()) {
            Json modes = Json::array();
            for (FiliationMode m : e.modes)
                modes.push_back(std::string(to_string(m)));
            je["modes"] = modes;
        }
        if (e.compare)
            je["compare"] = {{"attr", e.compare->attr}, {"op", std::string(to_string(e.compare->op))}};
        edges.push_back(je);
    }
    doc["edges"] = edges;
    return doc;
}

inline std::string serialize_pattern(const Pattern& p) { return pattern_to_json(p).dump(2) + "\n"; }

inline Pattern pattern_from_json(const Json& doc, const std::string& where)
{
    detail::require_version(doc, where);
    Pattern out;
    try {
        out.name = doc.value("name", "");
        for (const Json& jv : doc.at("vertices")) {
            PatternVertex v;
            v.var = jv.at("var").get<std::string>();
            v.layer = jv.at("layer").get<int>();
            if (jv.contains("class_label"))
                v.class_label = jv["class_label"].get<std::string>();
            if (jv.contains("preds"))
                v.preds = detail::preds_from_json(jv["preds"], where);
            out.vertices.push_back(std::move(v));
        }
        for (const Json& je : doc.at("edges")) {
            PatternEdge e;
            e.u = je.at("u").get<std::string>();
            e.v = je.at("v").get<std::string>();
            std::string category = je.at("category").get<std::string>();
            if (category == "spatial")
                e.category = EdgeCategory::Spatial;
            else if (category == "spatiotemporal")
                e.category = EdgeCategory::SpatioTemporal;
            else if (category == "filiation")
                e.category = EdgeCategory::Filiation;
            else
                throw Error(ErrorCode::ParseError, where + ": unknown edge category '" + category + "'");
            if (je.contains("relations"))
                for (const Json& jl : je["relations"])
                    e.relations.push_back(detail::parse_relation_or_throw(jl.get<std::string>(), where));
            if (je.contains("modes"))
                for (const Json& jm : je["modes"])
                    e.modes.push_back(detail::parse_mode_or_throw(jm.get<std::string>(), where));
            if (je.contains("compare"))
                e.compare = AttrCompare{je["compare"].at("attr").get<std::string>(),
                                        detail::parse_cmp_or_throw(
                                            je["compare"].at("op").get<std::string>(), where)};
            out.edges.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    return out;
}

/// Parse and validate a pattern document. Violations of the pattern
/// invariants are collected into the error message.
inline Pattern parse_pattern(const std::string& text, const std::string& where = "<string>")
{
    Pattern p = pattern_from_json(detail::parse_document(text, where), where);
    std::vector<PatternIssue> issues = validate_pattern(p);
    if (!issues.empty()) {
        std::string message = where + ": invalid pattern";
        for (const PatternIssue& issue : issues)
            message += "\n  " + issue.code + ": " + issue.message;
        throw Error(ErrorCode::BadInput, message);
    }
    return p;
}

inline void save_pattern(const Pattern& p, const std::filesystem::path& path)
{
    detail::write_file(path, serialize_pattern(p));
}

inline Pattern load_pattern(const std::filesystem::path& path)
{
    return parse_pattern(detail::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Object templates
// ---------------------------------------------------------------------------

inline Json template_to_json(const ObjectTemplate& tmpl)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json parts = Json::array();
    for (const PartVar& p : tmpl.parts) {
        Json jp{{"name", p.name}, {"class_label", p.class_label}};
        if (!p.preds.empty())
            jp["preds"] = detail::preds_to_json(p.preds);
        parts.push_back(jp);
    }
    doc["parts"] = parts;
    Json relations = Json::array();
    for (const RelationConstraintSpec& r : tmpl.relations) {
        Json labels = Json::array();
        for (const RelationLabel& l : r.allowed)
            labels.push_back(to_string(l));
        relations.push_back({{"a", r.a}, {"b", r.b}, {"allowed", labels}});
    }
    doc["relations"] = relations;
    return doc;
}

inline ObjectTemplate template_from_json(const Json& doc, const std::string& where)
{
    detail::require_version(doc, where);
    ObjectTemplate out;
    try {
        for (const Json& jp : doc.at("parts")) {
            PartVar p;
            p.name = jp.at("name").get<std::string>();
            p.class_label = jp.at("class_label").get<std::string>();
            if (jp.contains("preds"))
                p.preds = detail::preds_from_json(jp["preds"], where);
            out.parts.push_back(std::move(p));
        }
        for (const Json& jr : doc.at("relations")) {
            RelationConstraintSpec r;
            r.a = jr.at("a").get<std::string>();
            r.b = jr.at("b").get<std::string>();
            for (const Json& jl : jr.at("allowed"))
                r.allowed.push_back(detail::parse_relation_or_throw(jl.get<std::string>(), where));
            out.relations.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    check_template(out);
    return out;
}

inline void save_template(const ObjectTemplate& tmpl, const std::filesystem::path& path)
{
    detail::write_file(path, template_to_json(tmpl).dump(2) + "\n");
}

inline ObjectTemplate load_template(const std::filesystem::path& path)
{
    return template_from_json(detail::parse_document(detail::read_file(path), path.string()), path.string());
}

// ---------------------------------------------------------------------------
// Identification assignments
// ---------------------------------------------------------------------------

struct LayerAssignment {
    int time = 0;
    std::string label;
    IdAssignment parts;

    friend bool operator==(const LayerAssignment&, const LayerAssignment&) = default;
};

inline Json assignments_to_json(const std::vector<LayerAssignment>& assignments)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json out = Json::array();
    for (const LayerAssignment& a : assignments) {
        Json parts = Json::object();
        for (const auto& [part, region] : a.parts)
            parts[part] = region;
        out.push_back({{"time", a.time}, {"label", a.label}, {"parts", parts}});
    }
    doc["assignments"] = out;
    return doc;
}

inline std::vector<LayerAssignment> assignments_from_json(const Json& doc, const std::string& where)
{
    detail::require_version(doc, where);
    std::vector<LayerAssignment> out;
    try {
        for (const Json& ja : doc.at("assignments")) {
            LayerAssignment a;
            a.time = ja.at("time").get<int>();
            a.label = ja.at("label").get<std::string>();
            for (auto it = ja.at("parts").begin(); it != ja.at("parts").end(); ++it)
                a.parts[it.key()] = it.value().get<int>();
            out.push_back(std::move(a));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    return out;
}

inline void save_assignments(const std::vector<LayerAssignment>& assignments, const std::filesystem::path& path)
{
    detail::write_file(path, assignments_to_json(assignments).dump(2) + "\n");
}

inline std::vector<LayerAssignment> load_assignments(const std::filesystem::path& path)
{
    return assignments_from_json(detail::parse_document(detail::read_file(path), path.string()), path.string());
}

// ---------------------------------------------------------------------------
// Matches and change events
// ---------------------------------------------------------------------------

inline Json matches_to_json(const std::string& pattern_name, int anchor, const std::vector<Match>& matches)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["pattern"] = pattern_name;
    doc["anchor"] = anchor;
    Json out = Json::array();
    for (const Match& m : matches) {
        Json jm = Json::object();
        for (const auto& [var, node] : m)
            jm[var] = node;
        out.push_back(jm);
    }
    doc["assignments"] = out;
    return doc;
}

inline Json matches_to_json(const std::string& pattern_name, const std::map<int, std::vector<Match>>& per_anchor)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["pattern"] = pattern_name;
    Json anchors = Json::array();
    for (const auto& [anchor, matches] : per_anchor) {
        Json ja;
        ja["anchor"] = anchor;
        Json out = Json::array();
        for (const Match& m : matches) {
            Json jm = Json::object();
            for (const auto& [var, node] : m)
                jm[var] = node;
            out.push_back(jm);
        }
        ja["assignments"] = out;
        anchors.push_back(ja);
    }
    doc["anchors"] = anchors;
    return doc;
}

inline void save_matches(const std::string& pattern_name, int anchor, const std::vector<Match>& matches,
                         const std::filesystem::path& path)
{
    detail::write_file(path, matches_to_json(pattern_name, anchor, matches).dump(2) + "\n");
}

inline void save_matches(const std::string& pattern_name, const std::map<int, std::vector<Match>>& per_anchor,
                         const std::filesystem::path& path)
{
    detail::write_file(path, matches_to_json(pattern_name, per_anchor).dump(2) + "\n");
}

inline Json events_to_json(const std::vector<ChangeEvent>& events)
{
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json out = Json::array();
    for (const ChangeEvent& e : events)
        out.push_back({{"kind", std::string(to_string(e.kind))}, {"anchor", e.anchor}, {"nodes", e.nodes}});
    doc["events"] = out;
    return doc;
}

inline void save_events(const std::vector<ChangeEvent>& events, const std::filesystem::path& path)
{
    detail::write_file(path, events_to_json(events).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// CSV outputs
// ---------------------------------------------------------------------------

inline std::string frequency_csv(const FrequencyTable& table)
{
    std::ostringstream out;
    out << "pattern,anchor,count,support\n";
    for (const FrequencyRow& row : table)
        out << row.pattern << ',' << row.anchor << ',' << row.count << ',' << row.support << '\n';
    return out.str();
}

inline void save_frequency_csv(const FrequencyTable& table, const std::filesystem::path& path)
{
    detail::write_file(path, frequency_csv(table));
}

struct BenchRow {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::string pattern;
    std::size_t anchor_count = 0;
    std::size_t match_count = 0;
    double time_ms = 0.0;
};

inline std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream out;
    out << "nodes,edges,pattern,anchor_count,match_count,time_ms\n";
    for (const BenchRow& row : rows)
        out << row.nodes << ',' << row.edges << ',' << row.pattern << ',' << row.anchor_count << ','
            << row.match_count << ',' << row.time_ms << '\n';
    return out.str();
}

inline void save_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path)
{
    detail::write_file(path, bench_csv(rows));
}

} // namespace stgmine
