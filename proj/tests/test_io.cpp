#include <gtest/gtest.h>

#include <random>

#include "toricqh/examples.hpp"
#include "toricqh/io.hpp"

using namespace toricqh;

TEST(Io, DocumentRoundTrip) {
    for (auto& name : examples::names()) {
        PolytopeDocument doc = examples::by_name(name);
        std::string text = io::render_document(doc);
        PolytopeDocument back = io::document_from_json(io::parse_json(text, name));
        EXPECT_EQ(io::render_document(back), text) << name;
        EXPECT_EQ(back.facets.size(), doc.facets.size());
        for (std::size_t i = 0; i < doc.facets.size(); ++i) {
            EXPECT_EQ(back.facets[i].normal, doc.facets[i].normal);
            EXPECT_EQ(back.facets[i].support, doc.facets[i].support);
            EXPECT_EQ(back.facets[i].label, doc.facets[i].label);
        }
        EXPECT_EQ(back.classes, doc.classes);
        EXPECT_EQ(back.y_table, doc.y_table);
        EXPECT_EQ(back.mode, doc.mode);
        // emitted examples validate and are centred
        RatVec c = back.polytope().centroid();
        for (auto& x : c) EXPECT_EQ(x, 0) << name;
    }
}

TEST(Io, RationalsAreStrings) {
    std::string text = io::render_document(examples::blowup_cp2());
    EXPECT_NE(text.find("\"support\":\"7/20\""), std::string::npos);
    EXPECT_EQ(text.find('.'), std::string::npos);
    auto j = io::parse_json(R"({"dim": 1, "facets": [{"normal": [1], "support": 1}, {"normal": [-1], "support": "1/2"}]})", "inline");
    PolytopeDocument d = io::document_from_json(j);
    EXPECT_EQ(d.facets[0].support, 1);
    EXPECT_EQ(d.facets[1].support, rat(1, 2));
    EXPECT_EQ(d.mode, Mode::Fano);
}

TEST(Io, MalformedFilesAreParseErrors) {
    auto kind = [](const std::string& text) {
        try {
            io::document_from_json(io::parse_json(text, "inline"));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(kind("{"), ErrorKind::Parse);
    EXPECT_EQ(kind("[]"), ErrorKind::Parse);
    EXPECT_EQ(kind(R"({"facets": []})"), ErrorKind::Parse);
    EXPECT_EQ(kind(R"({"dim": 1, "facets": [{"normal": [1]}]})"), ErrorKind::Parse);
    EXPECT_EQ(kind(R"({"dim": 1, "facets": [{"normal": [1], "support": 0.5}]})"), ErrorKind::Parse);
    EXPECT_EQ(kind(R"({"dim": 1, "facets": [{"normal": [1], "support": "1/2"}], "y_table": {"3": "x1"}})"), ErrorKind::Parse);
    EXPECT_EQ(kind(R"({"dim": 1, "facets": [{"normal": [1], "support": "1/2"}], "mode": "toric"})"), ErrorKind::Parse);
}

TEST(Io, YTableKeysAreOneBased) {
    auto y = io::y_table_from_json(io::parse_json(R"j({"2": "x2 / (1 - t)"})j", "y"), 4);
    ASSERT_EQ(y.size(), 1u);
    EXPECT_EQ(y.begin()->first, 1);
    EXPECT_EQ(io::y_table_to_json(y).dump(), R"j({"2":"x2 / (1 - t)"})j");
}

TEST(Io, ElementRoundTrip) {
    auto qp = quantum_presentation(examples::hirzebruch2(), Rat(5));
    std::mt19937 rng(3);
    std::vector<QPoly> samples{qp.one(), qp.zero(), qp.nf(parse_expression("x2 q^{-1} t^{-7/12} / (1 - t)", 4).expand(qp.cutoff()))};
    for (int i = 0; i < 10; ++i) {
        QPoly a = qp.zero();
        for (int k = 0; k < 3; ++k) {
            PolyQ m = qp.classical().variable(static_cast<int>(rng() % 4));
            a += qp.monomial(m, static_cast<long>(rng() % 3) - 1, rat(static_cast<long>(rng() % 9), 4));
        }
        samples.push_back(qp.nf(a));
    }
    for (auto& a : samples) {
        std::string dumped = io::qpoly_to_json(a).dump();
        QPoly back = io::qpoly_from_json(io::parse_json(dumped, "element"), qp.nvars());
        EXPECT_EQ(io::qpoly_to_json(back).dump(), dumped);
        EXPECT_TRUE((back - a).is_zero());
        EXPECT_EQ(back.precision(), a.precision());
    }
}

TEST(Io, ReportRoundTrip) {
    auto qp = quantum_presentation(examples::blowup_cp2());
    SeidelEngine engine(qp);
    GeometricDictionary dict(engine, examples::blowup_cp2().classes);
    for (IntVec xi : std::vector<IntVec>{{-1, 0}, {-2, -1}, {1, 0}, {1, 1}}) {
        HomologyReport r = dict.report(engine.element(xi).value);
        auto j = io::report_to_json(r);
        HomologyReport back = io::report_from_json(io::parse_json(j.dump(), "report"));
        EXPECT_EQ(to_string(back), to_string(r));
        EXPECT_EQ(io::report_to_json(back), j);
    }
}
