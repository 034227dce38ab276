#include "strata/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace strata {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::int64_t require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

const json& require_field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::int64_t> int_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(require_int(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

/// Elements are coordinate arrays for abelian groups, plain indices for
/// table groups.
std::int64_t parse_element(const GroupPtr& group, const json& j, const std::string& where) {
    if (auto abelian = std::dynamic_pointer_cast<const AbelianGroup>(group)) {
        return abelian->index_of(int_list(j, where));
    }
    std::int64_t idx = require_int(j, where);
    if (idx < 0 || idx >= group->order()) fail(where, "element index out of range");
    return idx;
}

json element_json(const Group& group, std::int64_t index) {
    if (const auto* abelian = dynamic_cast<const AbelianGroup*>(&group)) {
        return json(abelian->coords_of(index));
    }
    return json(index);
}

json group_json(const Group& group) {
    json out;
    if (const auto* abelian = dynamic_cast<const AbelianGroup*>(&group)) {
        out["abelian"] = abelian->factor_orders();
    } else {
        out["table"] = static_cast<const TableGroup&>(group).table();
    }
    return out;
}

GroupPtr parse_group(const json& j, std::int64_t max_group_order) {
    if (!j.is_object()) fail("group", "expected an object");
    if (j.contains("abelian")) {
        try {
            return make_group(int_list(j.at("abelian"), "group.abelian"), max_group_order);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError) throw;
            fail("group.abelian", e.what());
        }
    }
    if (j.contains("table")) {
        const json& t = j.at("table");
        if (!t.is_array()) fail("group.table", "expected an array of rows");
        std::vector<std::vector<std::int64_t>> rows;
        for (std::size_t i = 0; i < t.size(); ++i) {
            rows.push_back(int_list(t[i], "group.table[" + std::to_string(i) + "]"));
        }
        try {
            return std::make_shared<const TableGroup>(std::move(rows), max_group_order);
        } catch (const Error& e) {
            fail("group.table", e.what());
        }
    }
    fail("group", "expected 'abelian' or 'table'");
}

ActionPtr parse_action(const json& doc, std::int64_t max_group_order) {
    if (doc.contains("pgonal")) {
        const json& pg = doc.at("pgonal");
        std::int64_t p = require_int(require_field(pg, "p", "pgonal"), "pgonal.p");
        auto exponents = int_list(require_field(pg, "exponents", "pgonal"), "pgonal.exponents");
        try {
            return make_pgonal_action(p, exponents, max_group_order);
        } catch (const Error& e) {
            fail("pgonal", e.what());
        }
    }

    auto action = std::make_shared<OrbifoldAction>();
    action->group = parse_group(require_field(doc, "group", "document"), max_group_order);

    const json& sig = require_field(doc, "signature", "document");
    action->signature.genus = require_int(require_field(sig, "genus", "signature"),
                                          "signature.genus");
    action->signature.cone_orders =
        int_list(require_field(sig, "cone_orders", "signature"), "signature.cone_orders");
    if (action->signature.genus < 0) fail("signature.genus", "must be non-negative");
    for (std::int64_t m : action->signature.cone_orders) {
        if (m < 2) fail("signature.cone_orders", "cone orders must be >= 2");
    }

    const json& phi = require_field(doc, "epimorphism", "document");
    const json& meridians = require_field(phi, "meridians", "epimorphism");
    if (!meridians.is_array() || meridians.size() != action->signature.cone_count()) {
        fail("epimorphism.meridians", "expected one image per cone point");
    }
    for (std::size_t i = 0; i < meridians.size(); ++i) {
        action->meridian_images.push_back(parse_element(
            action->group, meridians[i], "epimorphism.meridians[" + std::to_string(i) + "]"));
    }
    if (phi.contains("handles")) {
        const json& handles = phi.at("handles");
        if (!handles.is_array()) fail("epimorphism.handles", "expected an array");
        for (std::size_t i = 0; i < handles.size(); ++i) {
            const std::string where = "epimorphism.handles[" + std::to_string(i) + "]";
            action->handle_images.emplace_back(
                parse_element(action->group, require_field(handles[i], "alpha", where),
                              where + ".alpha"),
                parse_element(action->group, require_field(handles[i], "beta", where),
                              where + ".beta"));
        }
    }
    if (static_cast<std::int64_t>(action->handle_images.size()) != action->signature.genus) {
        fail("epimorphism.handles", "expected one (alpha, beta) pair per handle");
    }
    return action;
}

std::optional<std::vector<std::int64_t>> parse_image(const GroupPtr& group, const json& j,
                                                     const std::string& where) {
    if (!j.contains("image")) return std::nullopt;
    const json& image = j.at("image");
    if (!image.is_array()) fail(where + ".image", "expected an array of elements");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < image.size(); ++i) {
        out.push_back(
            parse_element(group, image[i], where + ".image[" + std::to_string(i) + "]"));
    }
    return out;
}

DecoratedDualGraph parse_multicurve(const ActionPtr& action, const json& mc) {
    const GroupPtr& group = action->group;
    std::vector<DualVertex> vertices;
    const json& vs = require_field(mc, "vertices", "multicurve");
    if (!vs.is_array() || vs.empty()) fail("multicurve.vertices", "expected a non-empty array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "multicurve.vertices[" + std::to_string(i) + "]";
        DualVertex v;
        if (vs[i].contains("genus")) v.genus = require_int(vs[i].at("genus"), where + ".genus");
        if (vs[i].contains("cones")) {
            for (std::int64_t c : int_list(vs[i].at("cones"), where + ".cones")) {
                v.cone_points.push_back(static_cast<int>(c));
            }
        }
        v.explicit_image = parse_image(group, vs[i], where);
        vertices.push_back(std::move(v));
    }

    std::vector<DualEdge> edges;
    if (mc.contains("edges")) {
        const json& es = mc.at("edges");
        if (!es.is_array()) fail("multicurve.edges", "expected an array");
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string where = "multicurve.edges[" + std::to_string(i) + "]";
            DualEdge e;
            auto ends = int_list(require_field(es[i], "ends", where), where + ".ends");
            if (ends.size() != 2) fail(where + ".ends", "expected [from, to]");
            e.u = static_cast<int>(ends[0]);
            e.v = static_cast<int>(ends[1]);
            if (es[i].contains("class")) {
                e.explicit_class = parse_element(group, es[i].at("class"), where + ".class");
            }
            if (es[i].contains("dual")) {
                e.explicit_dual = parse_element(group, es[i].at("dual"), where + ".dual");
            }
            e.explicit_image = parse_image(group, es[i], where);
            edges.push_back(std::move(e));
        }
    }

    std::vector<DualSemiedge> semiedges;
    if (mc.contains("semiedges")) {
        const json& ss = mc.at("semiedges");
        if (!ss.is_array()) fail("multicurve.semiedges", "expected an array");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const std::string where = "multicurve.semiedges[" + std::to_string(i) + "]";
            DualSemiedge s;
            s.vertex = static_cast<int>(
                require_int(require_field(ss[i], "vertex", where), where + ".vertex"));
            auto cones = int_list(require_field(ss[i], "cones", where), where + ".cones");
            if (cones.size() != 2) fail(where + ".cones", "expected two cone indices");
            s.endpoints = {static_cast<int>(cones[0]), static_cast<int>(cones[1])};
            if (ss[i].contains("dual")) {
                s.explicit_dual = parse_element(group, ss[i].at("dual"), where + ".dual");
            }
            s.explicit_image = parse_image(group, ss[i], where);
            semiedges.push_back(std::move(s));
        }
    }

    std::optional<std::vector<std::vector<int>>> handles;
    if (mc.contains("handle_assignment")) {
        const json& ha = mc.at("handle_assignment");
        if (!ha.is_array()) fail("multicurve.handle_assignment", "expected an array per vertex");
        handles.emplace();
        for (std::size_t i = 0; i < ha.size(); ++i) {
            std::vector<int> hs;
            for (std::int64_t h :
                 int_list(ha[i], "multicurve.handle_assignment[" + std::to_string(i) + "]")) {
                hs.push_back(static_cast<int>(h));
            }
            handles->push_back(std::move(hs));
        }
    }

    try {
        return DecoratedDualGraph::build(action, std::move(vertices), std::move(edges),
                                         std::move(semiedges), std::move(handles));
    } catch (const Error& e) {
        fail("multicurve", e.what());
    }
}

} // namespace

InputDocument parse_input(const std::string& text, std::int64_t max_group_order) {
    json doc = parse_json(text);
    if (!doc.is_object()) fail("document", "expected a JSON object");
    if (require_int(require_field(doc, "schema", "document"), "schema") != 1) {
        fail("schema", "unsupported schema version");
    }
    InputDocument input;
    input.action = parse_action(doc, max_group_order);
    if (doc.contains("multicurve")) {
        input.multicurve = parse_multicurve(input.action, doc.at("multicurve"));
    }
    return input;
}

InputDocument load_input(const std::string& path, std::int64_t max_group_order) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_input(buffer.str(), max_group_order);
}

std::string format_element(const Group& group, std::int64_t index) {
    return element_json(group, index).dump();
}

std::string stable_graph_to_json(const StableGraph& graph) {
    json out;
    out["schema"] = 1;
    if (graph.group) out["group"] = group_json(*graph.group);
    json vs = json::array();
    for (const auto& v : graph.vertices) {
        json jv;
        jv["source"] = v.source;
        jv["coset"] = graph.group ? element_json(*graph.group, v.coset_rep) : json(v.coset_rep);
        jv["weight"] = v.weight;
        vs.push_back(std::move(jv));
    }
    out["vertices"] = std::move(vs);
    json es = json::array();
    for (const auto& e : graph.edges) {
        json je;
        je["source"] = json::array({e.from_semiedge ? "arc" : "edge", e.source});
        je["coset"] = graph.group ? element_json(*graph.group, e.coset_rep) : json(e.coset_rep);
        je["ends"] = json::array({e.u, e.v});
        es.push_back(std::move(je));
    }
    out["edges"] = std::move(es);
    out["genus"] = stable_genus(graph);
    return out.dump(2) + "\n";
}

StableGraph stable_graph_from_json(const std::string& text) {
    json doc = parse_json(text);
    if (require_int(require_field(doc, "schema", "document"), "schema") != 1) {
        fail("schema", "unsupported schema version");
    }
    StableGraph graph;
    if (doc.contains("group")) {
        graph.group = parse_group(doc.at("group"), AbelianGroup::kDefaultOrderBound);
    }
    const json& vs = require_field(doc, "vertices", "document");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        StableGraph::Vertex v;
        v.source = static_cast<int>(
            require_int(require_field(vs[i], "source", where), where + ".source"));
        v.coset_rep = graph.group
                          ? parse_element(graph.group, require_field(vs[i], "coset", where),
                                          where + ".coset")
                          : require_int(require_field(vs[i], "coset", where), where + ".coset");
        v.weight = require_int(require_field(vs[i], "weight", where), where + ".weight");
        graph.vertices.push_back(v);
    }
    const json& es = require_field(doc, "edges", "document");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        StableGraph::Edge e;
        const json& source = require_field(es[i], "source", where);
        if (!source.is_array() || source.size() != 2 || !source[0].is_string()) {
            fail(where + ".source", "expected [kind, index]");
        }
        e.from_semiedge = source[0].get<std::string>() == "arc";
        e.source = static_cast<int>(require_int(source[1], where + ".source[1]"));
        e.coset_rep = graph.group
                          ? parse_element(graph.group, require_field(es[i], "coset", where),
                                          where + ".coset")
                          : require_int(require_field(es[i], "coset", where), where + ".coset");
        auto ends = int_list(require_field(es[i], "ends", where), where + ".ends");
        if (ends.size() != 2) fail(where + ".ends", "expected [u, v]");
        e.u = static_cast<int>(ends[0]);
        e.v = static_cast<int>(ends[1]);
        graph.edges.push_back(e);
    }
    // context subgroups are not serialized; the parsed graph supports
    // structural queries and re-emission only
    return graph;
}

namespace {

void dot_body(std::ostringstream& out, const StableGraph& graph) {
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        out << "  v" << i << " [label=\"w=" << graph.vertices[i].weight << "\"];\n";
    }
    for (const auto& e : graph.edges) {
        out << "  v" << e.u << " -- v" << e.v << ";\n";
    }
}

} // namespace

std::string stable_graph_to_dot(const StableGraph& graph, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    dot_body(out, graph);
    out << "}\n";
    return out.str();
}

namespace {

json decorated_tree_json(const OrbifoldAction& action, const DecoratedTree& tree) {
    json out;
    json vs = json::array();
    for (int v = 0; v < tree.vertex_count; ++v) {
        std::vector<std::int64_t> images;
        for (int c : tree.vertex_cones[v]) images.push_back(action.meridian_images[c]);
        std::sort(images.begin(), images.end());
        json image_list = json::array();
        for (std::int64_t x : images) image_list.push_back(element_json(*action.group, x));
        vs.push_back(std::move(image_list));
    }
    out["vertices"] = std::move(vs);
    json es = json::array();
    for (auto [u, v] : tree.edges) es.push_back(json::array({u, v}));
    out["edges"] = std::move(es);
    json arcs = json::array();
    for (const auto& arc : tree.arcs) {
        std::int64_t a = action.meridian_images[arc.endpoints[0]];
        std::int64_t b = action.meridian_images[arc.endpoints[1]];
        if (a > b) std::swap(a, b);
        arcs.push_back(json::object({{"vertex", arc.vertex},
                                     {"pair", json::array({element_json(*action.group, a),
                                                           element_json(*action.group, b)})}}));
    }
    out["arcs"] = std::move(arcs);
    return out;
}

} // namespace

std::string catalog_to_json(const StrataCatalog& catalog, const OrbifoldAction& action) {
    json out;
    out["schema"] = 1;
    out["group"] = group_json(*action.group);
    json sig;
    sig["genus"] = action.signature.genus;
    sig["cone_orders"] = action.signature.cone_orders;
    out["signature"] = std::move(sig);
    out["covering_genus"] = covering_genus(action);
    json strata = json::array();
    for (const auto& entry : catalog.entries) {
        json je;
        je["canonical"] = entry.key.hex();
        je["genus"] = stable_genus(entry.graph);
        json weights = json::array();
        for (const auto& v : entry.graph.vertices) weights.push_back(v.weight);
        json edges = json::array();
        for (const auto& e : entry.graph.edges) edges.push_back(json::array({e.u, e.v}));
        je["graph"] = json::object({{"weights", std::move(weights)}, {"edges", std::move(edges)}});
        json classes = json::array();
        for (const auto& tree : entry.classes) {
            classes.push_back(decorated_tree_json(action, tree));
        }
        je["multicurves"] = std::move(classes);
        strata.push_back(std::move(je));
    }
    out["strata"] = std::move(strata);
    return out.dump(2) + "\n";
}

std::string catalog_to_dot_bundle(const StrataCatalog& catalog) {
    std::ostringstream out;
    for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
        out << "graph stratum_" << i << " {\n";
        dot_body(out, catalog.entries[i].graph);
        out << "}\n";
    }
    return out.str();
}

std::string validation_report_text(const ValidationReport& report) {
    std::ostringstream out;
    auto flag = [](bool ok) { return ok ? "ok" : "failed"; };
    out << "relation: " << flag(report.relation_ok) << "\n";
    out << "torsion: " << flag(report.torsion_ok) << "\n";
    out << "surjectivity: " << flag(report.surjective_ok) << "\n";
    out << "hyperbolic: " << flag(report.hyperbolic_ok) << "\n";
    if (report.genus) {
        out << "genus: " << *report.genus << "\n";
    } else {
        out << "genus: failed\n";
    }
    for (const auto& note : report.failures) {
        out << "note: " << note << "\n";
    }
    out << "action: " << (report.valid() ? "valid" : "invalid") << "\n";
    return out.str();
}

std::string family_report_text(const SingleCurveFamily& family, const StableGraph& lifted) {
    std::ostringstream out;
    switch (family.kind) {
        case SingleCurveFamily::Kind::SeparatingBipartite:
            out << "family: separating K^" << family.d << "_{" << family.m << "," << family.n
                << "}\n";
            out << "parameters: m=" << family.m << " n=" << family.n << " d=" << family.d << "\n";
            break;
        case SingleCurveFamily::Kind::NonSeparatingCycle:
            out << "family: non-separating C^" << family.d << "_" << family.m << "\n";
            out << "parameters: m=" << family.m << " d=" << family.d << "\n";
            break;
        case SingleCurveFamily::Kind::ArcLoops:
            out << "family: arc, 1 vertex, " << family.count << " loops\n";
            break;
        case SingleCurveFamily::Kind::ArcParallel:
            out << "family: arc, 2 vertices, " << family.count << " edges\n";
            break;
    }
    out << "vertices: " << lifted.vertices.size() << "\n";
    out << "edges: " << lifted.edges.size() << "\n";
    out << "genus: " << stable_genus(lifted) << "\n";
    return out.str();
}

} // namespace strata
