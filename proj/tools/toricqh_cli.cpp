#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricqh/toricqh.hpp"

using namespace toricqh;
using nlohmann::json;

namespace {

struct Options {
    std::string file;
    std::string format = "text";
    std::string mode;
    std::string y_table;
    std::string cutoff;
    std::vector<long> xi;
    std::string expr_a, expr_b;
    std::string example;
    std::string mu;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::optional<Rat> optional_rat(const std::string& text, const char* flag) {
    if (text.empty()) return std::nullopt;
    try {
        return parse_rat(text);
    } catch (const Error&) {
        throw UsageError(std::string(flag) + " expects a rational such as 5 or 7/20, got '" + text + "'");
    }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string vec_string(const std::vector<long>& v) {
    std::vector<std::string> parts;
    for (long x : v) parts.push_back(std::to_string(x));
    return "(" + join(parts, ", ") + ")";
}

std::string rat_vec_string(const RatVec& v) {
    std::vector<std::string> parts;
    for (auto& x : v) parts.push_back(x.get_str());
    return "(" + join(parts, ", ") + ")";
}

PolytopeDocument load(const Options& o) {
    PolytopeDocument doc = io::load_document(o.file);
    if (!o.y_table.empty()) {
        json j = io::parse_json(io::read_file(o.y_table), o.y_table);
        doc.y_table = io::y_table_from_json(j.contains("y_table") ? j.at("y_table") : j, static_cast<int>(doc.facets.size()));
        doc.mode = Mode::Nef;
    }
    if (!o.mode.empty()) doc.mode = parse_mode(o.mode);
    if (doc.mode == Mode::Fano) doc.y_table.clear();
    return doc;
}

struct Context {
    explicit Context(const Options& o)
        : doc(load(o)), qp(quantum_presentation(doc, optional_rat(o.cutoff, "--cutoff"))), engine(qp) {}

    const GeometricDictionary& dictionary() {
        if (!dict) dict.emplace(engine, doc.classes);
        return *dict;
    }

    QPoly evaluate(const std::string& text) {
        const GeometricDictionary* d = qp.classical().dim() == 2 || !doc.classes.empty() ? &dictionary() : nullptr;
        auto lookup = [&](const std::string& name) -> std::optional<Fraction> {
            if (d)
                if (auto v = d->lookup(name)) return Fraction::of(*v);
            return std::nullopt;
        };
        return qp.nf(parse_expression(text, qp.nvars(), lookup).expand(qp.cutoff()));
    }

    /// Homology report when the dictionary covers the element, else the raw class.
    std::string render(const QPoly& a, json* out = nullptr) {
        try {
            HomologyReport r = dictionary().report(a);
            if (out) *out = io::report_to_json(r);
            return to_string(r);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DictionaryIncomplete && e.kind() != ErrorKind::NoEligibleVertex) throw;
        }
        if (out) *out = io::qpoly_to_json(a);
        return to_string(a);
    }

    PolytopeDocument doc;
    QuantumPresentation qp;
    SeidelEngine engine;
    std::optional<GeometricDictionary> dict;
};

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_validate(const Options& o) {
    PolytopeDocument doc = io::load_document(o.file);
    DelzantPolytope p = doc.polytope();
    json verts = json::array();
    std::string text = "valid Delzant polytope '" + doc.name + "': dim " + std::to_string(p.dim()) + ", " +
                       std::to_string(p.num_facets()) + " facets, " + std::to_string(p.vertices().size()) + " vertices\n";
    for (auto& v : p.vertices()) {
        std::vector<std::string> coords;
        for (auto& c : v.point) coords.push_back(c.get_str());
        verts.push_back({{"facets", facet_set_name(v.facets)}, {"point", coords}});
        text += "  vertex " + facet_set_name(v.facets) + " at " + rat_vec_string(v.point) + "\n";
    }
    RatVec c = p.centroid();
    std::vector<std::string> cs;
    for (auto& x : c) cs.push_back(x.get_str());
    text += "  centroid " + rat_vec_string(c) + "\n";
    emit(o, {{"valid", true}, {"name", doc.name}, {"dim", p.dim()}, {"vertices", verts}, {"centroid", cs}}, text);
    return 0;
}

int cmd_cohomology(const Options& o) {
    PolytopeDocument doc = io::load_document(o.file);
    ClassicalRing cl(doc.polytope());
    std::vector<std::string> linear, sr, basis;
    for (auto& g : cl.linear_generators()) linear.push_back(g.to_string());
    for (auto& g : cl.sr_generators()) sr.push_back(g.to_string());
    for (auto& m : cl.basis()) basis.push_back(m == Monomial(m.size(), 0) ? "1" : mono_to_string(m));
    std::string text = "linear relations: " + join(linear, ", ") + "\n";
    text += "Stanley-Reisner generators: " + join(sr, ", ") + "\n";
    std::vector<std::string> b;
    for (int x : cl.betti()) b.push_back(std::to_string(x));
    text += "betti: " + join(b, " ") + "\n";
    text += "basis: " + join(basis, ", ") + "\n";
    json pairing = json::array();
    for (int k = 0; k <= cl.dim(); ++k) {
        RatMatrix m = cl.pd_matrix(k);
        json rows = json::array();
        text += "pairing H^" + std::to_string(2 * k) + " x H^" + std::to_string(2 * (cl.dim() - k)) + ":\n";
        for (auto& row : m) {
            std::vector<std::string> r;
            for (auto& x : row) r.push_back(x.get_str());
            rows.push_back(r);
            text += "  [" + join(r, " ") + "]\n";
        }
        pairing.push_back(rows);
    }
    emit(o, {{"linear", linear}, {"stanley_reisner", sr}, {"betti", cl.betti()}, {"basis", basis}, {"pairing", pairing}}, text);
    return 0;
}

int cmd_quantum(const Options& o) {
    Context ctx(o);
    const auto& qp = ctx.qp;
    std::string text = "mode " + to_string(qp.mode()) + ", cutoff t^{" + qp.cutoff().get_str() + "}, hbar " + qp.hbar().get_str() + "\n";
    json rels = json::array();
    for (std::size_t i = 0; i < qp.num_relations(); ++i) {
        const PrimitiveSet& ps = qp.classical().primitive_sets()[i];
        std::string lhs = qp.classical().sr_generators()[i].to_string();
        QPoly rhs = qp.correction(i);
        text += "  " + lhs + " = " + to_string(rhs) + "   (beta: omega " + ps.beta.omega.get_str() + ", c1 " + std::to_string(ps.beta.c1) + ")\n";
        rels.push_back({{"generator", lhs}, {"correction", io::qpoly_to_json(rhs)}, {"text", to_string(rhs)}});
    }
    emit(o, {{"mode", to_string(qp.mode())}, {"cutoff", qp.cutoff().get_str()}, {"hbar", qp.hbar().get_str()}, {"relations", rels}}, text);
    return 0;
}

int cmd_product(const Options& o) {
    Context ctx(o);
    QPoly a = ctx.evaluate(o.expr_a), b = ctx.evaluate(o.expr_b);
    QPoly prod = ctx.qp.mul(a, b);
    json ja, jb, jp;
    std::string text = ctx.render(a, &ja) + " * " + ctx.render(b, &jb) + " = " + ctx.render(prod, &jp) + "\n";
    emit(o, {{"left", ja}, {"right", jb}, {"product", jp}, {"element", io::qpoly_to_json(prod)}}, text);
    return 0;
}

int cmd_seidel(const Options& o) {
    Context ctx(o);
    SeidelElement s = ctx.engine.element(o.xi);
    json rep;
    std::string text = "S" + vec_string(o.xi) + " = " + ctx.render(s.value, &rep) + "\n";
    text += "  in cohomology: " + to_string(s.value) + "\n";
    std::optional<QPoly> fmax_class;
    if (popcount(s.fmax) == ctx.qp.classical().dim() && ctx.qp.classical().dim() == 2) fmax_class = ctx.dictionary().point_lift();
    LeadingTermReport lt = ctx.engine.verify_leading_term(o.xi, fmax_class ? &*fmax_class : nullptr);
    text += "  F_max " + facet_set_name(s.fmax) + ", m_max " + std::to_string(s.m_max) + ", K_max " + s.K_max.get_str() + "\n";
    if (lt.applicable) {
        text += std::string("  leading term ") + (lt.leading_ok ? "matches" : "DOES NOT match") + " " + to_string(lt.expected_leading) + "\n";
        if (lt.exact_ok) text += std::string("  exactness ") + (*lt.exact_ok ? "confirmed" : "FAILED") + "\n";
    }
    for (auto& n : lt.notes) text += "  note: " + n + "\n";
    json j{{"xi", o.xi},
           {"report", rep},
           {"element", io::qpoly_to_json(s.value)},
           {"fmax", facet_set_name(s.fmax)},
           {"m_max", s.m_max},
           {"K_max", s.K_max.get_str()},
           {"leading_term", {{"applicable", lt.applicable}, {"ok", lt.leading_ok}, {"exactness_predicted", lt.exactness_predicted},
                             {"exact_ok", lt.exact_ok ? json(*lt.exact_ok) : json(nullptr)}, {"notes", lt.notes}}}};
    emit(o, j, text);
    bool bad = (lt.applicable && !lt.leading_ok) || (lt.exact_ok && !*lt.exact_ok);
    return bad ? 1 : 0;
}

int cmd_fixed(const Options& o) {
    PolytopeDocument doc = io::load_document(o.file);
    CircleAction a(doc.polytope(), o.xi);
    std::string text;
    json comps = json::array();
    for (auto& c : a.fixed_components()) {
        std::vector<std::string> ws;
        json wj = json::object();
        for (auto& [j, w] : c.weights) {
            ws.push_back("x" + std::to_string(j + 1) + ": " + std::to_string(w));
            wj["x" + std::to_string(j + 1)] = w;
        }
        text += to_string(c) + "  K = " + c.K.get_str() + "  m = " + std::to_string(c.m) + "  weights {" + join(ws, ", ") + "}" +
                "  index " + std::to_string(c.index) + (c.semifree ? "  semifree" : "") + "\n";
        comps.push_back({{"face", facet_set_name(c.face)}, {"K", c.K.get_str()}, {"m", c.m}, {"weights", wj}, {"index", c.index},
                         {"coindex", c.coindex}, {"semifree", c.semifree}, {"real_dim", c.real_dim}});
    }
    json iso = json::object();
    for (auto& [s, f] : a.polytope().faces())
        if (auto q = a.isotropy_order(s); q && *q > 1) {
            text += "isotropy Z/" + std::to_string(*q) + " on " + facet_set_name(s) + "\n";
            iso[facet_set_name(s)] = *q;
        }
    text += "global isotropy " + std::to_string(a.global_isotropy()) + "\n";
    emit(o, {{"xi", o.xi}, {"components", comps}, {"isotropy", iso}, {"global_isotropy", a.global_isotropy()}}, text);
    return 0;
}

int cmd_analyze(const Options& o) {
    PolytopeDocument doc = load(o);
    std::optional<Context> ctx;
    std::string note;
    try {
        ctx.emplace(o);
    } catch (const Error& e) {
        note = "Seidel rule skipped: " + std::string(e.what());
    }
    ObstructionReport r = analyze(doc.polytope(), o.xi, ctx ? &ctx->engine : nullptr);
    std::string text = to_string(r.verdict) + " [" + join(r.triggered_rules(), ", ") + "]\n";
    json findings = json::array();
    for (auto& f : r.findings) {
        text += "  " + f.rule + (f.triggered ? " triggered: " : " silent: ") + f.certificate + "\n";
        for (auto& a : f.assumptions) text += "     assumes " + a + "\n";
        findings.push_back({{"rule", f.rule}, {"triggered", f.triggered}, {"certificate", f.certificate}, {"assumptions", f.assumptions}});
    }
    if (!note.empty()) text += "  " + note + "\n";
    emit(o, {{"xi", o.xi}, {"verdict", to_string(r.verdict)}, {"triggered", r.triggered_rules()}, {"findings", findings}}, text);
    return 0;
}

int cmd_verify(const Options& o) {
    Context ctx(o);
    auto results = run_oracles(ctx.engine);
    std::string text;
    json arr = json::array();
    bool ok = true;
    for (auto& r : results) {
        ok = ok && r.passed;
        text += std::string(r.passed ? "PASS " : "FAIL ") + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")") + "\n";
        for (auto& v : r.violations) text += "     " + v + "\n";
        arr.push_back({{"name", r.name}, {"passed", r.passed}, {"violations", r.violations}, {"detail", r.detail}});
    }
    emit(o, {{"passed", ok}, {"oracles", arr}}, text);
    return ok ? 0 : 1;
}

int cmd_example(const Options& o) {
    auto doc = examples::by_name(o.example, optional_rat(o.mu, "--mu"));
    if (o.format == "json")
        std::cout << io::document_to_json(doc).dump(2) << "\n";
    else
        std::cout << io::render_document(doc);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum cohomology and Seidel elements of toric symplectic manifolds"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto file_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("FILE", o.file, "Polytope file")->required();
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        return c;
    };
    auto quantum_flags = [&](CLI::App* c) {
        c->add_option("--mode", o.mode, "Override the file's mode")->check(CLI::IsMember({"fano", "nef"}));
        c->add_option("--y-table", o.y_table, "JSON file with Y_i expressions keyed by facet number");
        c->add_option("--cutoff", o.cutoff, "Energy cutoff E_max");
    };
    auto xi_flag = [&](CLI::App* c) { c->add_option("--xi", o.xi, "Circle vector, comma separated")->required()->delimiter(','); };

    auto* validate = file_cmd("validate", "Check the Delzant conditions");
    auto* cohomology = file_cmd("cohomology", "Classical presentation, Betti numbers and pairing");
    auto* quantum = file_cmd("quantum", "Quantum relations");
    quantum_flags(quantum);
    auto* product = file_cmd("product", "Quantum product of two expressions");
    product->add_option("EXPR1", o.expr_a)->required();
    product->add_option("EXPR2", o.expr_b)->required();
    quantum_flags(product);
    auto* seidel = file_cmd("seidel", "Seidel element of a circle");
    xi_flag(seidel);
    quantum_flags(seidel);
    auto* fixed = file_cmd("fixed", "Fixed components, weights and isotropy");
    xi_flag(fixed);
    auto* analyze_cmd = file_cmd("analyze", "Run the essentiality rules");
    xi_flag(analyze_cmd);
    quantum_flags(analyze_cmd);
    auto* verify = file_cmd("verify", "Run the property oracles");
    quantum_flags(verify);
    auto* example = app.add_subcommand("example", "Print a bundled polytope file");
    example->add_option("NAME", o.example, "s2, cp2, blowup_cp2, s2xs2 or hirzebruch2")->required();
    example->add_option("--mu", o.mu, "Shape parameter");
    example->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*cohomology) return cmd_cohomology(o);
        if (*quantum) return cmd_quantum(o);
        if (*product) return cmd_product(o);
        if (*seidel) return cmd_seidel(o);
        if (*fixed) return cmd_fixed(o);
        if (*analyze_cmd) return cmd_analyze(o);
        if (*verify) return cmd_verify(o);
        if (*example) return cmd_example(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        if (o.format == "json")
            std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
