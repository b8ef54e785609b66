#include <gtest/gtest.h>

#include "helpers.hpp"
#include "toricqh/examples.hpp"
#include "toricqh/loops.hpp"

using namespace toricqh;
using toricqh::testing::fs1;

namespace {

bool has_rule(const ObstructionReport& r, const std::string& rule) {
    auto rules = r.triggered_rules();
    return std::find(rules.begin(), rules.end(), rule) != rules.end();
}

struct Engine {
    explicit Engine(const PolytopeDocument& doc) : qp(quantum_presentation(doc)), engine(qp) {}
    QuantumPresentation qp;
    SeidelEngine engine;
};

} // namespace

TEST(Loops, BlowupFacetCircleIsEssential) {
    Engine e(examples::blowup_cp2());
    auto r = analyze(e.qp.polytope(), {-1, 0}, &e.engine);
    EXPECT_EQ(r.verdict, Verdict::Essential);
    EXPECT_TRUE(has_rule(r, "T1"));
    EXPECT_TRUE(has_rule(r, "SD"));
    EXPECT_NE(r.finding("T1").certificate.find("F{1}"), std::string::npos);
    ASSERT_TRUE(r.seidel);
    EXPECT_EQ(to_string(r.verdict), "ESSENTIAL");
}

TEST(Loops, BlowupDiagonalVisibility) {
    auto p = examples::blowup_cp2().polytope();
    auto r = analyze(p, {-2, -1});
    EXPECT_EQ(r.verdict, Verdict::Essential);
    EXPECT_TRUE(has_rule(r, "T2"));
    const std::string& cert = r.finding("T2").certificate;
    EXPECT_NE(cert.find("F{1,3} visible with K = 1/20"), std::string::npos) << cert;
    EXPECT_NE(cert.find("F{2,4} not visible"), std::string::npos) << cert;
    EXPECT_EQ(CircleAction(p, {-2, -1}).component(fs1({1, 3})).K, 3 * rat(7, 20) - 1);
    EXPECT_THROW(r.finding("SD"), Error);
}

TEST(Loops, SquareDiagonalIsEssential) {
    auto r = analyze(examples::s2xs2().polytope(), {1, 1});
    EXPECT_EQ(r.verdict, Verdict::Essential);
    EXPECT_TRUE(has_rule(r, "T1"));
}

TEST(Loops, ProjectivePlaneChainBoundIsSharp) {
    auto p = examples::cp2().polytope();
    ChainBound cb = chain_bound(p, {2, 1});
    EXPECT_EQ(cb.min_cost, 1);
    EXPECT_EQ(cb.K_max, 1);
    EXPECT_TRUE(cb.m_condition);
    EXPECT_FALSE(cb.triggered);
    EXPECT_FALSE(cb.optimal_paths.empty());
    for (auto& path : cb.optimal_paths) {
        EXPECT_EQ(path.front(), fs1({2, 3}));
        EXPECT_EQ(path.back(), fs1({1, 2}));
    }
    Engine e(examples::cp2());
    auto r = analyze(p, {2, 1}, &e.engine);
    EXPECT_FALSE(r.finding("P6").triggered);
    EXPECT_FALSE(r.finding("SD").triggered);
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Loops, SquareChainBoundTriggers) {
    ChainBound cb = chain_bound(examples::s2xs2().polytope(), {1, 0});
    EXPECT_EQ(cb.K_max, 1);
    EXPECT_EQ(cb.min_cost, 2);
    EXPECT_TRUE(cb.triggered);
}

// Loops known to be contractible in Ham: pi_1 PU(3) = Z/3, pi_1 SO(3) = Z/2, and the
// monotone square has Ham ~ SO(3) x SO(3).
TEST(LoopsProperty, ContractibleLoopsAreNeverCertified) {
    Engine plane(examples::cp2());
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b) {
            if ((!a && !b) || ((a + b) % 3 + 3) % 3 != 0) continue;
            auto r = analyze(plane.qp.polytope(), {a, b}, &plane.engine);
            EXPECT_EQ(r.verdict, Verdict::Inconclusive) << "(" << a << "," << b << ")";
        }
    Engine line(examples::s2());
    for (long a : {-4, -2, 2, 4}) EXPECT_EQ(analyze(line.qp.polytope(), {a}, &line.engine).verdict, Verdict::Inconclusive) << a;
    Engine square(examples::s2xs2(1));
    for (long a = -2; a <= 2; a += 2)
        for (long b = -2; b <= 2; b += 2) {
            if (!a && !b) continue;
            auto r = analyze(square.qp.polytope(), {a, b}, &square.engine);
            EXPECT_EQ(r.verdict, Verdict::Inconclusive) << "(" << a << "," << b << ")";
        }
}

TEST(LoopsProperty, SeidelRuleAgreesWithOtherCertificates) {
    // whenever SD stays silent the remaining rules must too, on the monotone examples
    for (auto doc : {examples::cp2(), examples::s2xs2(1)}) {
        Engine e(doc);
        for (long a = -3; a <= 3; ++a)
            for (long b = -3; b <= 3; ++b) {
                if (!a && !b) continue;
                auto r = analyze(e.qp.polytope(), {a, b}, &e.engine);
                if (!r.finding("SD").triggered) {
                    EXPECT_TRUE(r.triggered_rules().empty()) << doc.name << " (" << a << "," << b << ")";
                }
            }
    }
}

TEST(LoopsProperty, ReversedCircleHasMirroredChainBound) {
    for (auto doc : {examples::blowup_cp2(), examples::s2xs2(), examples::cp2(), examples::hirzebruch2()}) {
        auto p = doc.polytope();
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b) {
                if (!a && !b) continue;
                ChainBound fwd = chain_bound(p, {a, b}), back = chain_bound(p, {-a, -b});
                EXPECT_EQ(fwd.min_cost, back.min_cost);
                EXPECT_LE(fwd.min_cost, fwd.K_max - CircleAction(p, {a, b}).f_min().K);
            }
    }
}
