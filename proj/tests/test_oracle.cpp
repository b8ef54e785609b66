#include <gtest/gtest.h>

#include "toricqh/examples.hpp"
#include "toricqh/oracle.hpp"

using namespace toricqh;

namespace {

// Fano corrections x^J q^{c1} t^{omega} with an optional perturbation of one relation.
QuantumPresentation perturbed(const PolytopeDocument& doc, std::size_t which, long dq, const Rat& dt) {
    auto ring = std::make_shared<const ClassicalRing>(doc.polytope());
    std::vector<Fraction> deltas;
    Rat cutoff = 0;
    for (std::size_t i = 0; i < ring->primitive_sets().size(); ++i) {
        const PrimitiveSet& ps = ring->primitive_sets()[i];
        PolyQ rhs = ring->one();
        for (auto& [j, c] : ps.complement)
            for (long k = 0; k < c; ++k) rhs = rhs * ring->variable(j);
        long d = ps.beta.c1;
        Rat w = ps.beta.omega;
        if (i == which) {
            d += dq;
            w += dt;
        }
        cutoff = std::max(cutoff, Rat(4 * ps.beta.omega));
        deltas.push_back(Fraction::of(QPoly::monomial(rhs, d, w)));
    }
    return QuantumPresentation::from_corrections(ring, deltas, cutoff);
}

bool all_pass(const std::vector<OracleResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const OracleResult& r) { return r.passed; });
}

std::string summary(const std::vector<OracleResult>& rs) {
    std::string s;
    for (auto& r : rs) s += r.name + (r.passed ? " ok; " : " FAILED; ");
    return s;
}

} // namespace

TEST(Oracle, ExamplesPassEverySuite) {
    for (auto doc : {examples::blowup_cp2(), examples::s2xs2(), examples::cp2(), examples::hirzebruch2(), examples::s2(),
                     examples::blowup_cp2(rat(2, 3))}) {
        SeidelEngine engine(quantum_presentation(doc));
        auto results = run_oracles(engine);
        EXPECT_TRUE(all_pass(results)) << doc.name << ": " << summary(results);
        for (auto& r : results) EXPECT_TRUE(r.violations.empty()) << doc.name << " " << r.name;
    }
}

TEST(Oracle, UnperturbedCorrectionsReproduceTheFanoRing) {
    auto doc = examples::blowup_cp2();
    auto qp = perturbed(doc, 0, 0, 0);
    SeidelEngine engine(qp);
    EXPECT_TRUE(all_pass(run_oracles(engine)));
}

TEST(Oracle, WrongAreaIsDetected) {
    auto doc = examples::blowup_cp2();
    for (std::size_t i = 0; i < 2; ++i) {
        SeidelEngine engine(perturbed(doc, i, 0, rat(1, 8)));
        auto hom = check_homomorphism(engine, 20);
        auto vert = check_vertex_independence(engine, {{-1, 0}, {1, 1}, {-2, -1}});
        EXPECT_FALSE(hom.passed && vert.passed) << i;
    }
}

TEST(Oracle, WrongChernNumberIsDetected) {
    auto doc = examples::blowup_cp2();
    auto qp = perturbed(doc, 1, 1, 0);
    auto grading = check_grading_and_betti(qp);
    EXPECT_FALSE(grading.passed);
    EXPECT_FALSE(grading.violations.empty());
}

TEST(Oracle, HomomorphismIsSeeded) {
    SeidelEngine engine(quantum_presentation(examples::s2xs2()));
    auto a = check_homomorphism(engine, 5, 99), b = check_homomorphism(engine, 5, 99);
    EXPECT_EQ(a.detail, b.detail);
    EXPECT_TRUE(a.passed);
    std::mt19937 rng(1);
    for (int i = 0; i < 50; ++i) {
        IntVec xi = random_xi(rng, 2, 2);
        EXPECT_TRUE(xi[0] || xi[1]);
        EXPECT_LE(std::labs(xi[0]), 2);
    }
}

TEST(Oracle, ClassicalLimit) {
    auto blowup = check_classical_limit(quantum_presentation(examples::blowup_cp2()));
    EXPECT_TRUE(blowup.passed);
    EXPECT_EQ(blowup.detail, "hbar = 1/4");
}
