#ifndef TORICQH_ORACLE_HPP
#define TORICQH_ORACLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cohomology.hpp"
#include "quantum.hpp"
#include "seidel.hpp"

namespace toricqh {

struct OracleResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> violations;
    std::string detail;
};

inline bool agrees(const QPoly& a, const QPoly& b) { return (a - b).is_zero(); }

/// (a b) c = a (b c) for every triple of standard monomials.
inline OracleResult check_associativity(const QuantumPresentation& qp) {
    OracleResult r{"associativity", true, {}, ""};
    const auto& basis = qp.classical().basis();
    std::vector<QPoly> lifted;
    for (auto& m : basis) lifted.push_back(qp.lift(PolyQ::monomial(m)));
    std::size_t count = 0;
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b)
            for (std::size_t c = b; c < basis.size(); ++c) {
                ++count;
                QPoly left = qp.mul(qp.mul(lifted[a], lifted[b]), lifted[c]);
                QPoly right = qp.mul(lifted[a], qp.mul(lifted[b], lifted[c]));
                QPoly other = qp.mul(qp.mul(lifted[a], lifted[c]), lifted[b]);
                if (!agrees(left, right) || !agrees(left, other))
                    r.violations.push_back(mono_to_string(basis[a]) + " * " + mono_to_string(basis[b]) + " * " + mono_to_string(basis[c]));
            }
    r.passed = r.violations.empty();
    r.detail = std::to_string(count) + " triples";
    return r;
}

inline IntVec random_xi(std::mt19937& rng, int dim, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntVec xi(static_cast<std::size_t>(dim));
    do {
        for (auto& x : xi) x = dist(rng);
    } while (std::all_of(xi.begin(), xi.end(), [](long x) { return x == 0; }));
    return xi;
}

inline QPoly seidel_or_one(const SeidelEngine& engine, const IntVec& xi, std::optional<std::size_t> vertex = std::nullopt) {
    if (std::all_of(xi.begin(), xi.end(), [](long x) { return x == 0; })) return engine.presentation().one();
    return engine.element(xi, vertex).value;
}

/// S(xi1 + xi2) = S(xi1) S(xi2) and S(xi) S(-xi) = 1 for random small vectors.
inline OracleResult check_homomorphism(const SeidelEngine& engine, int trials, std::uint32_t seed = 20240917, long bound = 2) {
    OracleResult r{"homomorphism", true, {}, ""};
    const QuantumPresentation& qp = engine.presentation();
    std::mt19937 rng(seed);
    const int dim = engine.polytope().dim();
    auto name = [](const IntVec& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    for (int t = 0; t < trials; ++t) {
        IntVec a = random_xi(rng, dim, bound), b = random_xi(rng, dim, bound), sum(a.size()), neg(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            sum[i] = a[i] + b[i];
            neg[i] = -a[i];
        }
        QPoly sa = seidel_or_one(engine, a), sb = seidel_or_one(engine, b);
        if (!agrees(seidel_or_one(engine, sum), qp.mul(sa, sb))) r.violations.push_back("S" + name(a) + " S" + name(b));
        if (!agrees(qp.mul(sa, seidel_or_one(engine, neg)), qp.one())) r.violations.push_back("inverse of S" + name(a));
    }
    r.passed = r.violations.empty();
    r.detail = std::to_string(trials) + " random pairs, seed " + std::to_string(seed);
    return r;
}

/// The same element from every vertex decomposition.
inline OracleResult check_vertex_independence(const SeidelEngine& engine, const std::vector<IntVec>& vectors) {
    OracleResult r{"vertex independence", true, {}, ""};
    for (auto& xi : vectors) {
        QPoly ref = engine.element(xi, 0).value;
        for (std::size_t v = 1; v < engine.polytope().vertices().size(); ++v)
            if (!agrees(engine.element(xi, v).value, ref)) r.violations.push_back("vertex " + facet_set_name(engine.polytope().vertices()[v].facets));
    }
    r.passed = r.violations.empty();
    r.detail = std::to_string(vectors.size()) + " vectors";
    return r;
}

/// v(a*b - ab) >= hbar for all degree-2 basis pairs.
inline OracleResult check_classical_limit(const QuantumPresentation& qp) {
    OracleResult r{"classical limit", true, {}, ""};
    const auto& deg = qp.classical().basis_by_degree();
    if (deg.size() < 2) return r;
    for (auto& a : deg[1])
        for (auto& b : deg[1]) {
            auto d = qp.classical_limit_defect(PolyQ::monomial(a), PolyQ::monomial(b));
            if (d && *d < qp.hbar())
                r.violations.push_back(mono_to_string(a) + " * " + mono_to_string(b) + " defect " + d->get_str());
        }
    r.passed = r.violations.empty();
    r.detail = "hbar = " + qp.hbar().get_str();
    return r;
}

/// Relations are homogeneous of degree 2|I| and the Betti numbers agree with the Morse count.
inline OracleResult check_grading_and_betti(const QuantumPresentation& qp) {
    OracleResult r{"grading and betti", true, {}, ""};
    const auto& sets = qp.classical().primitive_sets();
    for (std::size_t i = 0; i < qp.num_relations(); ++i) {
        auto deg = qdegree(qp.relation(i));
        if (!deg || *deg != 2L * popcount(sets[i].indices))
            r.violations.push_back("relation " + facet_set_name(sets[i].indices) + " is not homogeneous");
    }
    std::mt19937 rng(7);
    int tried = 0;
    for (int t = 0; t < 200 && tried < 10; ++t) {
        IntVec xi = random_xi(rng, qp.polytope().dim(), 9);
        std::vector<int> morse;
        try {
            morse = betti_morse(qp.polytope(), xi);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NonGenericVector) continue;
            throw;
        }
        ++tried;
        if (morse != qp.classical().betti()) r.violations.push_back("betti differs from the Morse count");
    }
    r.passed = r.violations.empty();
    return r;
}

inline std::vector<OracleResult> run_oracles(const SeidelEngine& engine, int trials = 20) {
    const QuantumPresentation& qp = engine.presentation();
    std::vector<OracleResult> out{check_associativity(qp), check_classical_limit(qp), check_grading_and_betti(qp),
                                  check_homomorphism(engine, trials)};
    std::vector<IntVec> vecs;
    for (auto& f : engine.polytope().facets()) vecs.push_back(f.normal);
    out.push_back(check_vertex_independence(engine, vecs));
    return out;
}

} // namespace toricqh

#endif
