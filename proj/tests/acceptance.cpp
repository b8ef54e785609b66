#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "toricqh/toricqh.hpp"

using namespace toricqh;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void expect_eq(const std::string& got, const std::string& want, const std::string& what) {
        if (got != want) failures.push_back(what + ": got \"" + got + "\", want \"" + want + "\"");
    }
};

FacetSet facets1(std::initializer_list<int> idx) {
    FacetSet s = 0;
    for (int i : idx) s |= facet_bit(i - 1);
    return s;
}

bool agree(const QPoly& a, const QPoly& b) { return (a - b).is_zero(); }

struct Manifold {
    explicit Manifold(const PolytopeDocument& doc, std::optional<Rat> cutoff = std::nullopt)
        : qp(quantum_presentation(doc, cutoff)), engine(qp), dict(engine, doc.classes) {}

    QPoly ev(const std::string& text) const {
        auto lookup = [&](const std::string& n) -> std::optional<Fraction> {
            if (auto v = dict.lookup(n)) return Fraction::of(*v);
            return std::nullopt;
        };
        return qp.nf(parse_expression(text, qp.nvars(), lookup).expand(qp.cutoff()));
    }
    std::string report(const QPoly& a) const { return to_string(dict.report(a)); }
    std::string product(const std::string& a, const std::string& b) const { return report(qp.mul(ev(a), ev(b))); }
    std::string seidel(const IntVec& xi) const { return report(engine.element(xi).value); }

    QuantumPresentation qp;
    SeidelEngine engine;
    GeometricDictionary dict;
};

void blowup_products(Criterion& c) {
    Manifold m(examples::blowup_cp2(rat(1, 2)));
    c.expect(agree(m.ev("x3*x4"), m.ev("q^2 t^{3/4}")) && !m.ev("x3*x4").truncated(), "x3 x4 = q^2 t^{3/4}");
    c.expect(agree(m.ev("x1*x2"), m.ev("x4 q t^{1/4}")) && !m.ev("x1*x2").truncated(), "x1 x2 = x4 q t^{1/4}");
    c.expect_eq(m.product("B", "B"), "E ⊗ q^{-1} t^{-1/4}", "B*B");
    c.expect_eq(m.product("L", "E"), "[M] ⊗ q^{-2} t^{-3/4}", "L*E");
    c.expect_eq(m.product("B", "L"), "p", "B*L");
    c.expect_eq(m.product("p", "p"), "L ⊗ q^{-3} t^{-1}", "p*p");
    c.expect_eq(m.product("E", "p"), "B ⊗ q^{-2} t^{-3/4}", "E*p");
    c.expect_eq(m.product("p", "B"), "[M] ⊗ q^{-3} t^{-1}", "p*B");
}

void blowup_seidel(Criterion& c) {
    Manifold m(examples::blowup_cp2(rat(1, 2)));
    const Rat eps = rat(7, 20), mu2 = rat(1, 4);
    c.expect_eq(m.seidel({-1, 0}), "B ⊗ q t^{7/20}", "S(Lambda_1)");
    c.expect_eq(m.seidel({0, -1}), "B ⊗ q t^{7/20}", "S(Lambda_2)");
    c.expect_eq(m.seidel({1, 1}), "L ⊗ q t^{" + Rat(1 - 2 * eps).get_str() + "}", "S(Lambda_3)");
    c.expect_eq(m.seidel({-1, -1}), "E ⊗ q t^{" + Rat(2 * eps - mu2).get_str() + "}", "S(Lambda_4)");
    c.expect_eq(m.seidel({1, 0}), "p ⊗ q^2 t^{" + Rat(1 - eps).get_str() + "}", "S(Lambda_1^-1)");
    c.expect_eq(m.seidel({-2, -1}),
                "p ⊗ q^2 t^{" + Rat(3 * eps - mu2).get_str() + "} - E ⊗ q t^{" + Rat(3 * eps - 2 * mu2).get_str() + "}", "S(Lambda')");
    QPoly s1 = m.engine.facet_seidel(0), s3 = m.engine.facet_seidel(2), s4 = m.engine.facet_seidel(3);
    QPoly s4inv = m.qp.inv(s4), s1sq_inv = m.qp.inv(m.qp.mul(s1, s1));
    c.expect(agree(s3, s4inv) && !s4inv.truncated(), "S(Lambda_3) = S(Lambda_4)^-1 exactly");
    c.expect(agree(s3, s1sq_inv) && !s1sq_inv.truncated(), "S(Lambda_3) = S(Lambda_1)^-2 exactly");
}

void square(Criterion& c) {
    const Rat mu = 2, eps = examples::hirzebruch_epsilon(mu);
    c.expect(eps == rat(13, 12), "eps = 13/12");
    Manifold sq(examples::s2xs2(mu));
    c.expect_eq(sq.product("B", "B"), "[M] ⊗ q^{-2} t^{-2}", "B*B");
    c.expect_eq(sq.product("A", "A"), "[M] ⊗ q^{-2} t^{-1}", "A*A");
    c.expect_eq(sq.product("A", "B"), "p", "A*B");
    c.expect_eq(sq.product("p", "A"), "B ⊗ q^{-2} t^{-1}", "p*A");
    c.expect_eq(sq.product("p", "B"), "A ⊗ q^{-2} t^{-2}", "p*B");

    // the Gamma circles live on the F_2 presentation of the same manifold
    Manifold f(examples::hirzebruch2(mu), Rat(5));
    const Rat c1 = rat(1, 2) + mu / 2 - eps;
    const Rat e2 = rat(1, 2) - mu / 2 + eps;
    const std::string s = "t^{" + Rat(mu - 1).get_str() + "}";
    c.expect_eq(f.seidel({0, 1}), "(A + B) ⊗ q t^{" + c1.get_str() + "}", "S(Gamma_1)");
    c.expect(agree(f.engine.element({0, 1}).value, f.ev("(A + B) q^{-1} t^{" + Rat(-c1).get_str() + "}")), "S(Gamma_1) closed form");

    QPoly g2 = f.engine.element({0, -1}).value;
    c.expect(agree(g2, f.ev("(A - B) q^{-1} t^{" + Rat(-e2).get_str() + "} / (1 - " + s + ")")), "S(Gamma_2) series");
    int orders = 0;
    for (auto& [k, p] : g2.terms())
        if (k.kappa <= f.qp.cutoff()) ++orders;
    c.expect(orders >= 3, "S(Gamma_2) has at least 3 series terms at cutoff 5");
    c.expect(agree(f.qp.mul(g2, f.engine.element({0, 1}).value), f.qp.one()), "S(Gamma_2) = S(Gamma_1)^-1");

    // B q t^eps - (A - B) q t^eps t^{1-mu} / (1 - t^{1-mu}), in cohomology orientation
    QPoly g3 = f.engine.element({1, -1}).value;
    QPoly g3_expected = f.ev("B q^{-1} t^{" + Rat(-eps).get_str() + "} - (A - B) q^{-1} t^{" + Rat(-eps + mu - 1).get_str() + "} / (1 - " + s + ")");
    c.expect(agree(g3, g3_expected), "S(Gamma_3) two-part expression");
    int corrections = 0;
    for (auto& [k, p] : g3.terms())
        if (k.kappa > -eps) ++corrections;
    c.expect(corrections >= 2, "S(Gamma_3) checked through 2 correction orders");

    // (p + p t^{1-mu} + 2 q^-2 t^-mu) q^2 t^{1/2 + 3mu/2 - 2eps}
    const Rat top = rat(1, 2) + 3 * mu / 2 - 2 * eps;
    QPoly gt = f.engine.element({1, 2}).value;
    c.expect(agree(gt, f.ev("(p + p " + s + " + 2 q^2 t^{" + mu.get_str() + "}) q^{-2} t^{" + Rat(-top).get_str() + "}")), "S(Gamma~) for xi = (1,2)");
    c.expect_eq(f.report(gt).substr(0, f.report(gt).find(" + O(")),
                "p ⊗ q^2 t^{" + top.get_str() + "} + p ⊗ q^2 t^{" + Rat(top + 1 - mu).get_str() + "} + 2 [M] ⊗ t^{" + Rat(top - mu).get_str() + "}",
                "S(Gamma~) report");
}

void projective_plane(Criterion& c) {
    Manifold m(examples::cp2());
    // the circle whose maximum is the vertex {1,2}
    SeidelElement s = m.engine.element({-1, -1});
    c.expect(popcount(s.fmax) == 2, "F_max is a vertex");
    c.expect_eq(m.report(m.qp.mul(s.value, m.ev("1"))), "p ⊗ q^2 t^{2/3}", "S(1)");
    c.expect_eq(m.report(m.qp.mul(s.value, m.ev("L"))), "[M] ⊗ q^{-1} t^{-1/3}", "S(L)");
    c.expect_eq(m.report(m.qp.mul(s.value, m.ev("p"))), "L ⊗ q^{-1} t^{-1/3}", "S(p)");
}

void properties(Criterion& c) {
    for (auto doc : {examples::blowup_cp2(), examples::s2xs2(), examples::cp2(), examples::hirzebruch2()}) {
        Manifold m(doc);
        for (auto& r : run_oracles(m.engine, 20)) {
            c.expect(r.passed, doc.name + " " + r.name + " (" + std::to_string(r.violations.size()) + " violations)");
        }
        for (int i = 0; i < m.qp.nvars(); ++i) {
            QPoly s = m.engine.facet_seidel(i);
            c.expect(agree(m.qp.mul(s, m.qp.inv(s)), m.qp.one()), doc.name + " inverse law for facet " + std::to_string(i + 1));
        }
    }
}

void centroids(Criterion& c) {
    for (Rat mu : {rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 5), rat(4, 5)}) {
        RatVec ctr = examples::blowup_cp2(mu).polytope().centroid();
        c.expect(ctr[0] == 0 && ctr[1] == 0, "blowup centroid at mu = " + mu.get_str());
    }
    for (Rat mu : {Rat(2), rat(3, 2), Rat(3), rat(5, 4), rat(7, 3)}) {
        RatVec ctr = examples::hirzebruch2(mu).polytope().centroid();
        c.expect(ctr[0] == 0 && ctr[1] == 0, "F_2 centroid at mu = " + mu.get_str());
    }
}

void obstructions(Criterion& c) {
    auto rules = [](const ObstructionReport& r) { return r.triggered_rules(); };
    auto has = [&](const ObstructionReport& r, const std::string& rule) {
        auto v = rules(r);
        return std::find(v.begin(), v.end(), rule) != v.end();
    };
    Manifold b(examples::blowup_cp2());
    auto r1 = analyze(b.qp.polytope(), {-1, 0}, &b.engine);
    c.expect(r1.verdict == Verdict::Essential && has(r1, "T1") && has(r1, "SD"), "blowup eta_1 essential via T1 and SD");
    auto r2 = analyze(b.qp.polytope(), {-2, -1}, &b.engine);
    const std::string& cert = r2.finding("T2").certificate;
    const Rat k13 = 3 * rat(7, 20) - 1;
    c.expect(r2.verdict == Verdict::Essential && has(r2, "T2"), "blowup (-2,-1) essential via T2");
    c.expect(cert.find("F{1,3} visible with K = " + k13.get_str()) != std::string::npos, "F13 visible with K = 3 eps - 1");
    c.expect(cert.find("F{2,4} not visible") != std::string::npos, "F24 not visible");
    Manifold sq(examples::s2xs2());
    auto r3 = analyze(sq.qp.polytope(), {1, 1}, &sq.engine);
    c.expect(r3.verdict == Verdict::Essential && has(r3, "T1"), "square (1,1) essential via T1");
    ChainBound cb = chain_bound(examples::cp2().polytope(), {2, 1});
    c.expect(cb.min_cost == 1 && cb.K_max == 1, "CP2 (2,1) min cost = K_max = 1");
    c.expect(cb.m_condition, "CP2 (2,1) m-condition realized");
    auto r4 = analyze(examples::cp2().polytope(), {2, 1});
    c.expect(!r4.finding("P6").triggered, "CP2 (2,1) P6 silent");
}

void isotropy(Criterion& c) {
    CircleAction b(examples::blowup_cp2().polytope(), {1, -1});
    c.expect(b.isotropy_order(facets1({3})) == std::optional<long>(2), "blowup (1,-1) edge D3 has order 2");
    CircleAction f(examples::hirzebruch2().polytope(), {1, 2});
    bool order3 = false;
    for (FacetSet e : f.polytope().edges())
        if (f.isotropy_order(e) == std::optional<long>(3)) order3 = true;
    c.expect(order3, "F_2 (1,2) has an edge of order 3");
    std::vector<long> w;
    for (auto& [j, x] : f.f_max().weights) w.push_back(x);
    std::sort(w.begin(), w.end());
    c.expect(w == std::vector<long>{-3, -1}, "F_2 (1,2) max vertex weights (-3,-1)");
    CircleAction s(examples::s2xs2().polytope(), {1, 1});
    c.expect(s.global_isotropy() == 1, "square (1,1) semifree everywhere");
    for (auto& comp : s.fixed_components()) c.expect(comp.semifree, "square (1,1) " + to_string(comp) + " semifree");
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void(Criterion&)>>> all{
        {"blowup relations and product table", blowup_products},
        {"blowup Seidel elements and identities", blowup_seidel},
        {"S2 x S2 products and Gamma elements", square},
        {"CP2 vertex circle action", projective_plane},
        {"property suites", properties},
        {"centroid normalization", centroids},
        {"obstruction battery", obstructions},
        {"isotropy", isotropy},
    };
    auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Criterion c{static_cast<int>(i + 1), all[i].first, {}};
        try {
            all[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << "\n";
        for (auto& f : c.failures) std::cout << "     " << f << "\n";
        if (!c.failures.empty()) ++failed;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed in " << secs << " s\n";
    return failed == 0 ? 0 : 1;
}
