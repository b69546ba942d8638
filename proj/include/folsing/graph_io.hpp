#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "folsing/adjoint.hpp"
#include "folsing/graph.hpp"

namespace folsing {

using OrderedJson = nlohmann::ordered_json;

// Graph file format:
//   {"curves":[{"id":"E1","self":-2,"genus":0,"nodal":false,"invariant":true,"z":2},
//              {"id":"C","self":-1,"invariant":false,"tang":0}],
//    "edges":[["E1","C",1]]}
// Field order is fixed so emitted files are byte-stable.
inline OrderedJson graph_to_json(const DecoratedGraph& g) {
    OrderedJson j;
    j["curves"] = OrderedJson::array();
    for (const auto& c : g.curves()) {
        OrderedJson jc;
        jc["id"] = c.id;
        jc["self"] = c.self_int;
        jc["genus"] = c.genus;
        jc["nodal"] = c.nodal;
        jc["invariant"] = c.invariant;
        if (c.invariant) jc["z"] = c.z_index;
        else jc["tang"] = c.tangency;
        j["curves"].push_back(jc);
    }
    j["edges"] = OrderedJson::array();
    for (const auto& e : g.edges()) {
        j["edges"].push_back(OrderedJson::array({e.a, e.b, e.multiplicity}));
    }
    return j;
}

inline DecoratedGraph graph_from_json(const OrderedJson& j) {
    if (!j.contains("curves")) throw std::invalid_argument("graph JSON: missing 'curves'");
    std::vector<Curve> curves;
    for (const auto& jc : j.at("curves")) {
        Curve c;
        c.id = jc.at("id").get<std::string>();
        c.self_int = jc.at("self").get<int>();
        c.genus = jc.value("genus", 0);
        c.nodal = jc.value("nodal", false);
        c.invariant = jc.at("invariant").get<bool>();
        if (c.invariant) {
            if (jc.contains("tang"))
                throw std::invalid_argument("graph JSON: invariant curve " + c.id +
                                            " must carry 'z', not 'tang'");
            c.z_index = jc.value("z", 0);
        } else {
            if (jc.contains("z"))
                throw std::invalid_argument("graph JSON: non-invariant curve " + c.id +
                                            " must carry 'tang', not 'z'");
            c.tangency = jc.value("tang", 0);
        }
        curves.push_back(c);
    }
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.a = je.at(0).get<std::string>();
            e.b = je.at(1).get<std::string>();
            e.multiplicity = je.size() > 2 ? je.at(2).get<int>() : 1;
            edges.push_back(e);
        }
    }
    return DecoratedGraph(std::move(curves), std::move(edges));
}

inline DecoratedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("no such file: " + path);
    OrderedJson j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument("cannot parse " + path + ": " + err.what());
    }
    return graph_from_json(j);
}

inline std::string graph_to_string(const DecoratedGraph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

inline void save_graph(const DecoratedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << graph_to_string(g);
}

// DOT export: invariant curves drawn solid, non-invariant dashed; the label
// carries the self-intersection and the relevant index.
inline std::string graph_to_dot(const DecoratedGraph& g) {
    std::ostringstream out;
    out << "graph exceptional {\n";
    out << "  node [shape=circle];\n";
    for (const auto& c : g.curves()) {
        out << "  \"" << c.id << "\" [label=\"" << c.id << " | " << c.self_int << " | ";
        if (c.invariant) out << "Z=" << c.z_index;
        else out << "tang=" << c.tangency;
        out << "\", style=" << (c.invariant ? "solid" : "dashed") << "];\n";
    }
    for (const auto& e : g.edges()) {
        for (int m = 0; m < e.multiplicity; ++m)
            out << "  \"" << e.a << "\" -- \"" << e.b << "\";\n";
    }
    out << "}\n";
    return out.str();
}

// Serialization helpers shared by the CLI.
inline OrderedJson eps_affine_to_json(const EpsAffine& v) {
    OrderedJson j;
    j["const"] = v.const_part().str();
    j["eps"] = v.eps_part().str();
    return j;
}

inline OrderedJson divisor_to_json(const DecoratedGraph& g, const Divisor& d) {
    OrderedJson j = OrderedJson::object();
    for (const auto& c : g.curves()) {
        auto it = d.find(c.id);
        if (it != d.end()) j[c.id] = eps_affine_to_json(it->second);
    }
    return j;
}

inline OrderedJson grades_to_json(const GradeVerdict& v) {
    OrderedJson j;
    j["terminal"] = v.terminal;
    j["canonical"] = v.canonical;
    j["klt"] = v.klt;
    j["lc"] = v.lc;
    OrderedJson w = OrderedJson::object();
    if (v.terminal_witness) w["terminal"] = *v.terminal_witness;
    if (v.canonical_witness) w["canonical"] = *v.canonical_witness;
    if (v.klt_witness) w["klt"] = *v.klt_witness;
    if (v.lc_witness) w["lc"] = *v.lc_witness;
    if (!w.empty()) j["failing_curves"] = w;
    return j;
}

}  // namespace folsing
