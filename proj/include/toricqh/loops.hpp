#ifndef TORICQH_LOOPS_HPP
#define TORICQH_LOOPS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "circle.hpp"
#include "seidel.hpp"

namespace toricqh {

enum class Verdict { Essential, Inconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::Essential ? "ESSENTIAL" : "INCONCLUSIVE"; }

struct Finding {
    std::string rule;
    bool triggered = false;
    bool conditional = false;
    std::string certificate;
    std::vector<std::string> assumptions;
};

struct ChainBound {
    Rat min_cost;
    Rat K_max;
    /// min-cost paths as lists of fixed-component faces, F_max first
    std::vector<std::vector<FacetSet>> optimal_paths;
    bool m_condition = false;
    bool triggered = false;
};

struct ObstructionReport {
    IntVec xi;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Finding> findings;
    std::optional<SeidelElement> seidel;

    std::vector<std::string> triggered_rules() const {
        std::vector<std::string> out;
        for (auto& f : findings)
            if (f.triggered) out.push_back(f.rule);
        return out;
    }

    const Finding& finding(const std::string& rule) const {
        for (auto& f : findings)
            if (f.rule == rule) return f;
        fail(ErrorKind::InvalidArgument, "no rule " + rule);
    }
};

inline std::string format_rat(const Rat& r) { return r.get_str(); }

/// Shortest chain of fixed components from F_max to F_min with cost |dK| / q_pair, and whether a
/// min-cost chain realizes m_max when the bound is attained.
inline ChainBound chain_bound(const CircleAction& action) {
    const auto& comps = action.fixed_components();
    const std::size_t n = comps.size();
    std::vector<std::vector<long>> q(n, std::vector<long>(n, 1));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) q[a][b] = q[b][a] = action.q_pair(comps[a].face, comps[b].face);
    auto cost = [&](std::size_t a, std::size_t b) { return Rat(abs(comps[a].K - comps[b].K) / q[a][b]); };
    const std::size_t src = 0, dst = n - 1;
    // Dijkstra on the complete graph (edges only between different K levels)
    std::vector<std::optional<Rat>> dist(n);
    std::vector<bool> done(n, false);
    dist[src] = Rat(0);
    for (std::size_t iter = 0; iter < n; ++iter) {
        std::optional<std::size_t> u;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && dist[v] && (!u || *dist[v] < *dist[*u])) u = v;
        if (!u) break;
        done[*u] = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || comps[v].K == comps[*u].K) continue;
            Rat c = *dist[*u] + cost(*u, v);
            if (!dist[v] || c < *dist[v]) dist[v] = c;
        }
    }
    ChainBound out;
    out.K_max = comps[src].K;
    out.min_cost = *dist[dst];
    if (out.min_cost > out.K_max) {
        out.triggered = true;
        return out;
    }
    if (out.min_cost < out.K_max) return out;
    // enumerate simple min-cost chains and test the weight identity
    std::vector<std::size_t> path{src};
    std::vector<bool> used(n, false);
    used[src] = true;
    std::function<void(std::size_t, Rat, Rat)> walk = [&](std::size_t u, Rat acc, Rat msum) {
        if (acc > out.min_cost) return;
        if (u == dst) {
            if (acc != out.min_cost) return;
            std::vector<FacetSet> faces;
            for (auto i : path) faces.push_back(comps[i].face);
            out.optimal_paths.push_back(faces);
            if (msum == comps[src].m) out.m_condition = true;
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || comps[v].K == comps[u].K) continue;
            Rat sign = comps[u].K > comps[v].K ? Rat(1) : Rat(-1);
            used[v] = true;
            path.push_back(v);
            walk(v, acc + cost(u, v), msum + Rat(comps[u].m - comps[v].m) / q[u][v] * sign);
            path.pop_back();
            used[v] = false;
        }
    };
    walk(src, Rat(0), Rat(0));
    out.triggered = !out.m_condition;
    return out;
}

inline ChainBound chain_bound(const DelzantPolytope& p, const IntVec& xi) { return chain_bound(CircleAction(p, xi)); }

namespace detail {

inline PolyQ facet_power_product(const ClassicalRing& cl, const FixedComponent& f, int sign) {
    PolyQ out = cl.one();
    for (auto& [j, w] : f.weights)
        if (w * sign > 0)
            for (long k = 0; k < std::labs(w); ++k) out = out * cl.variable(j);
    return cl.normal_form(out);
}

inline std::string weights_string(const FixedComponent& f) {
    std::string s = "(";
    bool first = true;
    for (auto& [j, w] : f.weights) {
        if (!first) s += ", ";
        s += std::to_string(w);
        first = false;
    }
    return s + ")";
}

} // namespace detail

/// Runs every obstruction rule; the verdict is Essential when any rule triggers.
inline ObstructionReport analyze(const DelzantPolytope& p, const IntVec& xi, const SeidelEngine* engine = nullptr) {
    CircleAction action(p, xi);
    ClassicalRing cl(p);
    ObstructionReport rep;
    rep.xi = xi;
    const auto& comps = action.fixed_components();
    const FixedComponent& fmax = action.f_max();
    const FixedComponent& fmin = action.f_min();

    {
        Finding f{"T1", false, false, "", {}};
        if (fmax.semifree) f.certificate = to_string(fmax) + " is a semifree maximum";
        if (fmin.semifree) f.certificate += std::string(f.certificate.empty() ? "" : "; ") + to_string(fmin) + " is a semifree minimum";
        f.triggered = fmax.semifree || fmin.semifree;
        rep.findings.push_back(f);
    }

    {
        Finding f{"T2", false, false, "", {}};
        for (auto& c : comps) {
            bool positive_ok = std::all_of(c.weights.begin(), c.weights.end(), [](auto& e) { return e.second <= 1; });
            PolyQ euler = cl.one();
            for (auto& [j, w] : c.weights)
                if (w < 0)
                    for (long k = 0; k < -w - 1; ++k) euler = euler * cl.variable(j);
            bool visible = positive_ok && !cl.restrict_to_face(euler, c.face).is_zero();
            std::string name = to_string(c);
            if (!visible) {
                f.certificate += name + " not visible; ";
                continue;
            }
            if (c.face == fmax.face) {
                f.triggered = true;
                f.certificate += name + " is a visible maximum; ";
                continue;
            }
            long bound = action.superlevel_isotropy_bound(c.K);
            if (bound > 2) {
                f.certificate += name + " visible but the superlevel set has " + std::to_string(bound) + "-fold isotropy; ";
                continue;
            }
            if (c.K != 0 || c.m != 0 || !c.semifree) {
                f.triggered = true;
                f.certificate += name + " visible with K = " + format_rat(c.K) + ", m = " + std::to_string(c.m) + "; ";
            } else {
                f.certificate += name + " visible with K = m = 0; ";
            }
        }
        rep.findings.push_back(f);
    }

    {
        Finding f{"P4", false, false, "", {}};
        for (auto& c : comps) {
            if (!c.semifree) continue;
            PolyQ plus = detail::facet_power_product(cl, c, 1), minus = detail::facet_power_product(cl, c, -1);
            if (c.K != 0 || c.m != 0) {
                f.triggered = true;
                f.certificate += to_string(c) + " semifree with K = " + format_rat(c.K) + ", m = " + std::to_string(c.m) + "; ";
            } else if (!(plus == minus)) {
                f.triggered = true;
                f.certificate += to_string(c) + " semifree with [f+] != [f-]; ";
            }
        }
        rep.findings.push_back(f);
    }

    {
        Finding f{"R5", false, false, "", {}};
        for (auto& c : comps) {
            PolyQ plus = detail::facet_power_product(cl, c, 1), minus = detail::facet_power_product(cl, c, -1);
            if (plus.is_zero() || minus.is_zero()) continue;
            if (c.K != 0 || c.m != 0 || !(plus == minus)) {
                f.triggered = true;
                f.certificate += to_string(c) + " has X+ and X- nonzero with K = " + format_rat(c.K) +
                                 ", m = " + std::to_string(c.m) + (plus == minus ? "" : ", X+ != X-") + "; ";
            }
        }
        rep.findings.push_back(f);
    }

    const long k = action.global_isotropy();
    {
        Finding f{"S2", false, false, "", {}};
        if (k > 2) {
            f.certificate = "isotropy up to " + std::to_string(k) + "-fold; rule needs at most twofold";
        } else {
            if (fmax.K != -fmin.K || fmax.m != -fmin.m) {
                f.triggered = true;
                f.certificate += "K_max = " + format_rat(fmax.K) + ", K_min = " + format_rat(fmin.K) + ", m_max = " +
                                 std::to_string(fmax.m) + ", m_min = " + std::to_string(fmin.m) + "; ";
            }
            // Betti symmetry inside each component of the Z/2-fixed set
            for (auto& comp : action.isotropy_components(2)) {
                std::map<std::tuple<Rat, long, int>, int> lhs, rhs;
                for (auto& c : comps) {
                    if (std::find(comp.begin(), comp.end(), c.face) == comp.end()) continue;
                    auto betti = action.face_betti(c.face);
                    for (std::size_t j = 0; j < betti.size(); ++j) {
                        lhs[{c.K, c.m, static_cast<int>(2 * j) + c.index}] += betti[j];
                        rhs[{Rat(-c.K), -c.m, static_cast<int>(2 * j) + c.coindex}] += betti[j];
                    }
                }
                if (lhs != rhs) {
                    f.triggered = true;
                    f.certificate += "Betti numbers of fixed components are not symmetric in a component of M^{Z/2}; ";
                    break;
                }
            }
        }
        rep.findings.push_back(f);
    }

    {
        Finding f{"C", false, false, "", {}};
        Rat a = fmax.K, b = abs(fmin.K);
        auto holds = [&](const Rat& top, const Rat& low, long mtop, long mlow, const FixedComponent& hi, const FixedComponent& lo) {
            if (!(top <= low && low <= (k - 1) * top)) return false;
            if (low < (k - 1) * top) return true;
            if (mlow != (k - 1) * std::labs(mtop)) return false;
            for (auto& comp : action.isotropy_components(k))
                if (std::count(comp.begin(), comp.end(), hi.face) && std::count(comp.begin(), comp.end(), lo.face)) return true;
            return false;
        };
        bool ok = holds(a, b, fmax.m, fmin.m, fmax, fmin) || holds(b, a, fmin.m, -fmax.m, fmin, fmax);
        f.triggered = !ok;
        f.certificate = "k = " + std::to_string(k) + ", K_max = " + format_rat(a) + ", |K_min| = " + format_rat(b);
        rep.findings.push_back(f);
    }

    {
        Finding f{"P6", false, false, "", {}};
        ChainBound cb = chain_bound(action);
        f.triggered = cb.triggered;
        f.certificate = "min chain cost " + format_rat(cb.min_cost) + " vs K_max " + format_rat(cb.K_max);
        if (cb.min_cost == cb.K_max) f.certificate += cb.m_condition ? ", m-condition realized" : ", m-condition fails";
        f.assumptions.push_back("chains restricted to simple paths");
        rep.findings.push_back(f);
    }

    if (engine) {
        Finding f{"SD", false, false, "", {}};
        SeidelElement s = engine->element(xi);
        QPoly diff = s.value - engine->presentation().one();
        f.triggered = !diff.is_zero();
        f.certificate = f.triggered ? "S = " + to_string(s.value) + " != 1" : "S = 1 up to the cutoff";
        f.assumptions.push_back("quantum presentation asserted " + to_string(engine->presentation().mode()));
        rep.seidel = s;
        rep.findings.push_back(f);
    }

    for (auto& f : rep.findings)
        if (f.triggered) rep.verdict = Verdict::Essential;
    return rep;
}

} // namespace toricqh

#endif
