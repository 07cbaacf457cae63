#pragma once

// JSON views of the core types.  ordered_json keeps insertion order, so a
// given value always serializes to the same bytes.

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wtree/blowup.hpp"
#include "wtree/enumerate.hpp"
#include "wtree/errors.hpp"
#include "wtree/ops.hpp"
#include "wtree/phi.hpp"
#include "wtree/poly.hpp"
#include "wtree/tree.hpp"

namespace wtree {

using ojson = nlohmann::ordered_json;

// Tree <-> {"label": ..., "weight": ..., "children": [...]}, children in
// canonical display order.
inline ojson tree_to_json(const WeightedTree& t) {
    auto ch = t.children_map();
    std::map<int, CanonEnc> encs;
    detail::build_enc(t, ch, t.root, true, &encs);
    std::function<ojson(int)> rec = [&](int v) {
        ojson j;
        j["label"] = t.at(v).label;
        j["weight"] = t.at(v).weight;
        std::vector<int> kids = ch.at(v);
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            if (int c = enc_cmp(encs.at(a), encs.at(b))) return c < 0;
            return t.at(a).label < t.at(b).label;
        });
        j["children"] = ojson::array();
        for (int c : kids) j["children"].push_back(rec(c));
        return j;
    };
    return rec(t.root);
}

inline WeightedTree tree_from_json(const ojson& j) {
    WeightedTree t;
    int next = 0;
    std::function<int(const ojson&, int)> rec = [&](const ojson& node, int parent) {
        if (!node.is_object() || !node.contains("label"))
            throw DomainError("tree JSON node must be an object with a label");
        int id = next++;
        WeightedTree::Vertex vx;
        vx.parent = parent;
        vx.label = node.at("label").get<std::string>();
        vx.weight = node.value("weight", 0LL);
        t.verts[id] = vx;
        if (node.contains("children"))
            for (const ojson& c : node.at("children")) rec(c, id);
        return id;
    };
    t.root = rec(j, -1);
    t.validate();
    return t;
}

// {"vertices": [{"id","weight","genus"}], "edges": [["a","b"], ...]}
inline DualGraph dual_graph_from_json(const ojson& j) {
    DualGraph g;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw DomainError("dual graph JSON needs 'vertices' and 'edges'");
    for (const ojson& v : j.at("vertices")) {
        DualGraph::Node n;
        n.id = v.at("id").get<std::string>();
        n.weight = v.value("weight", 0LL);
        n.genus = v.value("genus", 0);
        g.nodes.push_back(n);
    }
    for (const ojson& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw DomainError("dual graph edge must be a pair of vertex ids");
        g.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    return g;
}

inline ojson classification_to_json(const WeightedTree& t) {
    TreeClassification c = classify(t);
    ojson j;
    j["terminally_weighted"] = c.terminally_weighted;
    j["stable"] = c.stable;
    j["semistable"] = c.semistable;
    j["path_tree"] = c.path_tree;
    j["simple"] = c.simple;
    j["trunk"] = ojson::array();
    for (int v : c.trunk) j["trunk"].push_back(t.at(v).label);
    j["branch_vertex"] = c.branch_vertex ? ojson(t.at(*c.branch_vertex).label) : ojson(nullptr);
    j["br"] = c.br;
    return j;
}

// Polynomial -> [{"coef": c, "monomial": {"z_a": e, ...}}], display order.
inline ojson poly_to_json(const Poly& p, const std::map<Var, std::string>& names) {
    std::vector<std::pair<Monomial, long long>> terms(p.terms.begin(), p.terms.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return monomial_display_less(a.first, b.first);
    });
    ojson arr = ojson::array();
    for (const auto& [m, c] : terms) {
        ojson t;
        t["coef"] = c;
        ojson mono = ojson::object();
        for (const auto& [v, e] : m) mono[var_name(v, names)] = e;
        t["monomial"] = mono;
        arr.push_back(t);
    }
    return arr;
}

inline ojson system_to_json(const PolySystem& sys) {
    ojson j;
    j["n"] = sys.n;
    j["inventory"] = ojson::array();
    for (Var v : sys.inventory) j["inventory"].push_back(var_name(v, sys.names));
    j["components"] = ojson::array();
    for (const Poly& p : sys.components) j["components"].push_back(poly_to_json(p, sys.names));
    return j;
}

inline ojson pi_locus_to_json(const PiLocusResult& r) {
    ojson j;
    switch (r.status) {
        case PiLocusResult::Status::center: j["status"] = "center"; break;
        case PiLocusResult::Status::empty: j["status"] = "empty"; break;
        default: j["status"] = "uncovered"; break;
    }
    j["vars"] = ojson::array();
    for (Var v : r.vars) j["vars"].push_back(var_name(v, r.names));
    return j;
}

inline ojson chart_to_json(const BlowupChart& c) {
    const auto& names = c.system.names;
    ojson j;
    j["i"] = c.chart_index;
    j["terminal_direction"] = c.terminal_direction;
    j["center"] = ojson::array();
    for (int a : c.center) j["center"].push_back(var_name(z_var(a), names));
    j["substitution"] = ojson::object();
    for (const auto& [v, p] : c.substitution)
        j["substitution"][var_name(v, names)] = poly_to_string(p, names);
    j["system"] = ojson::array();
    for (const Poly& p : c.system.components) j["system"].push_back(poly_to_json(p, names));
    j["matched"] = canonical_form(c.matched);
    j["matched_printed"] = print(c.matched);
    j["variable_map"] = ojson::object();
    for (const auto& [from, to] : c.variable_map)
        j["variable_map"][var_name(from, names)] = var_name(to, names);
    j["normalization"] = ojson::object();
    for (const auto& [v, p] : c.normalization)
        j["normalization"][var_name(v, names)] = poly_to_string(p, names);
    return j;
}

inline ojson pipeline_to_json(const PipelineReport& rep) {
    ojson j;
    j["d"] = rep.d;
    j["n"] = rep.n;
    j["literal_staging"] = rep.literal_staging;
    j["stages"] = ojson::array();
    for (const PipelineStage& s : rep.stages) {
        ojson js;
        js["k"] = s.k;
        js["survivors"] = s.survivors;
        js["blown"] = ojson::array();
        for (const auto& [src, charts] : s.blown) {
            ojson jb;
            jb["source"] = src;
            jb["charts"] = ojson::array();
            for (const BlowupChart& c : charts) jb["charts"].push_back(chart_to_json(c));
            js["blown"].push_back(jb);
        }
        js["result"] = s.result;
        j["stages"].push_back(js);
    }
    j["terminal"] = ojson::array();
    for (const TerminalCertificate& t : rep.terminal) {
        ojson jt;
        jt["tree"] = t.tree;
        ojson mono = ojson::object();
        for (const auto& [v, e] : t.z_monomial) mono[var_name(v, t.names)] = e;
        jt["monomial"] = mono;
        jt["w_vars"] = ojson::array();
        for (Var v : t.w_vars) jt["w_vars"].push_back(var_name(v, t.names));
        j["terminal"].push_back(jt);
    }
    return j;
}

} // namespace wtree
