#ifndef TORICQH_IO_HPP
#define TORICQH_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "document.hpp"
#include "novikov.hpp"
#include "seidel.hpp"

namespace toricqh::io {

using nlohmann::json;

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, what + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Rationals travel as strings ("7/20"); plain JSON integers are accepted on input.
inline Rat rat_from_json(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    fail(ErrorKind::Parse, what + " must be a rational string such as \"7/20\"");
}

template <class T>
T field(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key)) fail(ErrorKind::Parse, what + " is missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::Parse, what + " has a malformed \"" + key + "\"");
    }
}

/// Y-table keys are 1-based facet numbers.
inline std::map<int, std::string> y_table_from_json(const json& j, int num_facets) {
    if (!j.is_object()) fail(ErrorKind::Parse, "y_table must be an object keyed by facet number");
    std::map<int, std::string> out;
    for (auto& [key, value] : j.items()) {
        int idx = 0;
        try {
            idx = std::stoi(key);
        } catch (const std::exception&) {
            fail(ErrorKind::Parse, "y_table key '" + key + "' is not a facet number");
        }
        if (idx < 1 || idx > num_facets) fail(ErrorKind::Parse, "y_table key " + key + " is out of range");
        if (!value.is_string()) fail(ErrorKind::Parse, "y_table entry " + key + " must be an expression string");
        out[idx - 1] = value.get<std::string>();
    }
    return out;
}

inline json y_table_to_json(const std::map<int, std::string>& y) {
    json out = json::object();
    for (auto& [i, text] : y) out[std::to_string(i + 1)] = text;
    return out;
}

inline PolytopeDocument document_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::Parse, "polytope file must be an object");
    PolytopeDocument d;
    d.name = j.value("name", std::string("polytope"));
    d.dim = field<int>(j, "dim", "polytope file");
    if (!j.contains("facets") || !j.at("facets").is_array()) fail(ErrorKind::Parse, "polytope file needs a \"facets\" array");
    std::size_t k = 0;
    for (auto& f : j.at("facets")) {
        std::string what = "facet " + std::to_string(++k);
        Facet facet;
        facet.normal = field<IntVec>(f, "normal", what);
        if (!f.contains("support")) fail(ErrorKind::Parse, what + " is missing \"support\"");
        facet.support = rat_from_json(f.at("support"), what + " support");
        facet.label = f.value("label", std::string());
        d.facets.push_back(std::move(facet));
    }
    if (j.contains("classes")) {
        for (auto& c : j.at("classes")) d.classes.emplace_back(field<std::string>(c, "name", "class"), field<std::string>(c, "expr", "class"));
    }
    if (j.contains("y_table")) d.y_table = y_table_from_json(j.at("y_table"), static_cast<int>(d.facets.size()));
    if (j.contains("mode")) d.mode = parse_mode(field<std::string>(j, "mode", "polytope file"));
    return d;
}

inline json document_to_json(const PolytopeDocument& d) {
    json j;
    j["name"] = d.name;
    j["dim"] = d.dim;
    j["facets"] = json::array();
    for (auto& f : d.facets) {
        json fj{{"normal", f.normal}, {"support", f.support.get_str()}};
        if (!f.label.empty()) fj["label"] = f.label;
        j["facets"].push_back(fj);
    }
    if (!d.classes.empty()) {
        j["classes"] = json::array();
        for (auto& [name, expr] : d.classes) j["classes"].push_back({{"name", name}, {"expr", expr}});
    }
    if (!d.y_table.empty()) j["y_table"] = y_table_to_json(d.y_table);
    j["mode"] = to_string(d.mode);
    return j;
}

inline PolytopeDocument load_document(const std::string& path) { return document_from_json(parse_json(read_file(path), path)); }

/// One facet per line, so files stay readable and diffable.
inline std::string render_document(const PolytopeDocument& d) {
    json j = document_to_json(d);
    std::string out = "{\n  \"name\": " + j["name"].dump() + ",\n  \"dim\": " + j["dim"].dump() + ",\n  \"facets\": [\n";
    for (std::size_t i = 0; i < j["facets"].size(); ++i)
        out += "    " + j["facets"][i].dump() + (i + 1 < j["facets"].size() ? ",\n" : "\n");
    out += "  ]";
    for (const char* key : {"classes", "y_table", "mode"})
        if (j.contains(key)) out += ",\n  \"" + std::string(key) + "\": " + j[key].dump();
    return out + "\n}\n";
}

inline json rat_or_null(const std::optional<Rat>& r) { return r ? json(r->get_str()) : json(nullptr); }

inline std::optional<Rat> optional_rat(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return rat_from_json(j.at(key), key);
}

/// Terms ordered by valuation, then q-degree, then monomial.
inline json qpoly_to_json(const QPoly& a) {
    json terms = json::array();
    for (auto& [k, p] : a.terms())
        for (auto& [m, c] : p.terms()) terms.push_back({{"t", k.kappa.get_str()}, {"q", k.d}, {"x", m}, {"coeff", c.get_str()}});
    int nvars = a.terms().empty() ? 0 : a.terms().begin()->second.nvars();
    return {{"nvars", nvars}, {"cutoff", rat_or_null(a.cutoff())}, {"precision", rat_or_null(a.precision())}, {"terms", terms}};
}

inline QPoly qpoly_from_json(const json& j, int nvars) {
    QPoly out(optional_rat(j, "cutoff"));
    if (!j.contains("terms") || !j.at("terms").is_array()) fail(ErrorKind::Parse, "element needs a \"terms\" array");
    for (auto& t : j.at("terms")) {
        Monomial m = field<Monomial>(t, "x", "term");
        if (static_cast<int>(m.size()) != nvars) fail(ErrorKind::Parse, "term has the wrong number of variables");
        PolyQ p(nvars);
        p.add_term(m, rat_from_json(t.at("coeff"), "coefficient"));
        out.add_term(NovKey{rat_from_json(t.at("t"), "t exponent"), field<long>(t, "q", "term")}, p);
    }
    out.force_precision(optional_rat(j, "precision"));
    return out;
}

inline json report_to_json(const HomologyReport& r) {
    json terms = json::array();
    for (auto& t : r.terms) terms.push_back({{"class", t.name}, {"coeff", t.coeff.get_str()}, {"q", t.d}, {"t", t.kappa.get_str()}});
    return {{"terms", terms}, {"precision", rat_or_null(r.precision)}, {"text", to_string(r)}};
}

inline HomologyReport report_from_json(const json& j) {
    HomologyReport r;
    for (auto& t : j.at("terms"))
        r.terms.push_back({field<std::string>(t, "class", "term"), rat_from_json(t.at("coeff"), "coefficient"), field<long>(t, "q", "term"),
                           rat_from_json(t.at("t"), "t exponent")});
    r.precision = optional_rat(j, "precision");
    return r;
}

} // namespace toricqh::io

#endif
