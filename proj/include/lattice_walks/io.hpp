#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lattice_walks/classify.hpp"
#include "lattice_walks/graph.hpp"
#include "lattice_walks/params.hpp"
#include "lattice_walks/version.hpp"

namespace lattice_walks {

using Json = nlohmann::ordered_json;

// 17 significant digits are enough to round-trip any double exactly.
inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// graph input: named families ("star:3"), text files, structured documents
// ---------------------------------------------------------------------------

// Text format: first line "n <count>", then one "e <i> <j>" line per edge,
// vertices 1-based.  Blank lines and '#' comments are skipped.
inline Graph graph_from_text(std::istream& in) {
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "n") {
            if (!(ls >> n)) throw input_error("graph file: malformed 'n' line");
        } else if (tag == "e") {
            int a, b;
            if (!(ls >> a >> b)) throw input_error("graph file: malformed 'e' line");
            edges.emplace_back(a, b);
        } else {
            throw input_error("graph file: unknown line tag '" + tag + "'");
        }
    }
    if (n < 1) throw input_error("graph file: missing or invalid 'n' line");
    return build_graph(n, edges);
}

// Structured document: {"n": 3, "edges": [[1,2],[2,3]]}, vertices 1-based.
inline Graph graph_from_json(const Json& doc) {
    if (!doc.contains("n")) throw input_error("graph document: missing field 'n'");
    const int n = doc.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    if (doc.contains("edges"))
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw input_error("graph document: edges must be 2-element arrays");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    return build_graph(n, edges);
}

// "--graph star:3 | cycle:6 | complete:4 | path:5 | edgeless:3 | <file>"
inline Graph parse_graph_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string family = spec.substr(0, colon);
        const std::string arg = spec.substr(colon + 1);
        bool numeric = !arg.empty();
        for (char c : arg) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
        if (numeric) {
            const int size = std::stoi(arg);
            if (family == "star") return named_graph(GraphFamily::Star, size);
            if (family == "cycle") return named_graph(GraphFamily::Cycle, size);
            if (family == "complete") return named_graph(GraphFamily::Complete, size);
            if (family == "path") return named_graph(GraphFamily::Path, size);
            if (family == "edgeless") return named_graph(GraphFamily::Edgeless, size);
            throw input_error("unknown graph family '" + family + "'");
        }
    }
    std::ifstream in(spec);
    if (!in) throw input_error("cannot open graph file '" + spec + "'");
    // sniff: a structured document starts with '{'
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
        in.get();
        c = in.peek();
    }
    if (c == '{') {
        Json doc;
        try {
            in >> doc;
        } catch (const Json::parse_error& e) {
            throw input_error(std::string("graph document: ") + e.what());
        }
        return graph_from_json(doc);
    }
    return graph_from_text(in);
}

// ---------------------------------------------------------------------------
// parameters
// ---------------------------------------------------------------------------

inline Beta parse_beta(const std::string& text) {
    if (text == "-inf") return Beta::hard_core();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw input_error("trailing characters after beta value");
        return Beta(v);
    } catch (const input_error&) {
        throw;
    } catch (...) {
        throw input_error("beta must be a number or '-inf', got '" + text + "'");
    }
}

inline Variant parse_variant(const std::string& text) {
    if (text == "standard") return Variant::Standard;
    if (text == "modified") return Variant::Modified;
    throw input_error("variant must be 'standard' or 'modified', got '" + text + "'");
}

// {"alpha": -1.0, "beta": 0.5 | "-inf", "variant": "standard" | "modified"}
inline Params params_from_json(const Json& doc) {
    Params p;
    if (!doc.contains("alpha")) throw input_error("parameter document: missing field 'alpha'");
    p.alpha = doc.at("alpha").get<double>();
    if (!doc.contains("beta")) throw input_error("parameter document: missing field 'beta'");
    const auto& b = doc.at("beta");
    p.beta = b.is_string() ? parse_beta(b.get<std::string>()) : Beta(b.get<double>());
    if (doc.contains("variant")) p.variant = parse_variant(doc.at("variant").get<std::string>());
    check_params(p);
    return p;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline Json beta_to_json(const Beta& b) {
    if (b.is_hard_core()) return Json("-inf");
    return Json(b.value());
}

inline Json params_to_json(const Params& p) {
    return Json{{"alpha", p.alpha}, {"beta", beta_to_json(p.beta)},
                {"variant", variant_name(p.variant)}};
}

inline Json graph_summary_json(const Graph& g, const SpectralInfo& sp, int kappa) {
    return Json{{"n", g.vertex_count()},       {"edge_count", g.edge_count()},
                {"min_degree", g.min_degree()}, {"lambda1", sp.lambda1},
                {"lambda1_error_bound", sp.lambda1_error_bound}, {"kappa", kappa}};
}

inline Json classification_to_json(const ClassificationReport& rep) {
    Json doc;
    doc["version"] = kVersion;
    doc["command"] = "classify";
    doc["graph"] = Json{{"n", rep.inputs.n},
                        {"edge_count", rep.inputs.edge_count},
                        {"min_degree", rep.inputs.min_degree},
                        {"lambda1", rep.inputs.lambda1},
                        {"lambda1_error_bound", rep.inputs.lambda1_error_bound},
                        {"kappa", rep.inputs.kappa}};
    doc["params"] = Json{{"alpha", rep.inputs.alpha},
                         {"beta", beta_to_json(rep.inputs.beta)},
                         {"variant", variant_name(rep.inputs.variant)}};
    doc["chain"] = rep.chain == ChainKind::Ctmc ? "ctmc" : "dtmc";
    doc["recurrence"] = recurrence_name(rep.recurrence.cls);
    doc["rule_fired"] = rep.recurrence.rule;
    if (rep.explosion) {
        doc["explosion"] = explosion_name(rep.explosion->cls);
        doc["explosion_rule"] = rep.explosion->rule;
    } else {
        doc["explosion"] = nullptr;
        doc["explosion_rule"] = nullptr;
    }
    doc["boundary_note"] =
        rep.recurrence.boundary_note ? Json(*rep.recurrence.boundary_note) : Json(nullptr);
    doc["notes"] = rep.notes;
    return doc;
}

// One sweep/classify CSV row under the fixed header
// "alpha,beta,recurrence,explosion,rule".
inline std::string classification_csv_row(const ClassificationReport& rep) {
    std::string row = fmt_double(rep.inputs.alpha);
    row += ',';
    row += rep.inputs.beta.is_hard_core() ? "-inf" : fmt_double(rep.inputs.beta.value());
    row += ',';
    row += recurrence_name(rep.recurrence.cls);
    row += ',';
    row += rep.explosion ? explosion_name(rep.explosion->cls) : "n/a";
    row += ',';
    row += rep.recurrence.rule;
    return row;
}

inline constexpr const char* kSweepCsvHeader = "alpha,beta,recurrence,explosion,rule";

} // namespace lattice_walks
