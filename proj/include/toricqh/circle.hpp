#ifndef TORICQH_CIRCLE_HPP
#define TORICQH_CIRCLE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohomology.hpp"
#include "linalg.hpp"
#include "polytope.hpp"

namespace toricqh {

struct FixedComponent {
    FacetSet face = 0;
    Rat K;
    /// facet -> weight for every facet containing the face (the normal directions)
    std::map<int, long> weights;
    long m = 0;
    int index = 0;
    int coindex = 0;
    bool semifree = true;
    int real_dim = 0;
};

inline std::string to_string(const FixedComponent& f) { return "F" + facet_set_name(f.face); }

/// Whether (x, y) lies in the subgroup of Q x Z spanned by the given pairs.
inline bool in_pair_lattice(const std::vector<std::pair<Rat, long>>& gens, const Rat& x, long y) {
    if (x == 0 && y == 0) return true;
    mpz_class den = x.get_den();
    for (auto& [w, c] : gens) den = lcm(den, mpz_class(w.get_den()));
    IntMatrix m(2, IntVec(gens.size() + 1));
    for (std::size_t k = 0; k < gens.size(); ++k) {
        m[0][k] = Rat(gens[k].first * den).get_num().get_si();
        m[1][k] = gens[k].second;
    }
    m[0][gens.size()] = -Rat(x * den).get_num().get_si();
    m[1][gens.size()] = -y;
    long g = 0;
    for (auto& v : linalg::integer_kernel(m, gens.size() + 1)) g = std::gcd(g, std::labs(v.back()));
    return g == 1;
}

/// The circle Lambda_xi inside the torus, with the normalized moment map K = <xi, . - centroid>.
class CircleAction {
public:
    CircleAction(DelzantPolytope p, IntVec xi) : p_(std::move(p)), xi_(std::move(xi)) {
        if (xi_.size() != static_cast<std::size_t>(p_.dim()))
            fail(ErrorKind::InvalidArgument, "circle vector has " + std::to_string(xi_.size()) + " entries, expected " + std::to_string(p_.dim()));
        if (std::all_of(xi_.begin(), xi_.end(), [](long v) { return v == 0; })) fail(ErrorKind::ZeroVector, "xi = 0");
        center_ = p_.centroid();
        build();
    }

    const DelzantPolytope& polytope() const { return p_; }
    const IntVec& xi() const { return xi_; }

    Rat K_at_vertex(std::size_t v) const {
        Rat s = 0;
        const RatVec& pt = p_.vertices()[v].point;
        for (std::size_t k = 0; k < pt.size(); ++k) s += xi_[k] * (pt[k] - center_[k]);
        return s;
    }

    Rat K_range_max(FacetSet face) const {
        Rat best = K_at_vertex(p_.face(face).vertices.front());
        for (std::size_t v : p_.face(face).vertices) best = std::max(best, K_at_vertex(v));
        return best;
    }

    /// xi lies in the span of the normals of the facets containing the face.
    bool is_fixed(FacetSet face) const {
        auto coords = p_.vertex_coordinates(p_.least_vertex(face), xi_);
        for (auto& [j, a] : coords)
            if (!contains(face, j) && a != 0) return false;
        return true;
    }

    const std::vector<FixedComponent>& fixed_components() const { return fixed_; }
    const FixedComponent& f_max() const { return fixed_.front(); }
    const FixedComponent& f_min() const { return fixed_.back(); }

    const FixedComponent& component(FacetSet face) const {
        for (auto& f : fixed_)
            if (f.face == face) return f;
        fail(ErrorKind::InvalidArgument, facet_set_name(face) + " is not a fixed component");
    }

    /// Order of the stabilizer on the relative interior of the face; nullopt when the face is fixed.
    std::optional<long> isotropy_order(FacetSet face) const {
        auto coords = p_.vertex_coordinates(p_.least_vertex(face), xi_);
        long g = 0;
        for (auto& [j, a] : coords)
            if (!contains(face, j)) g = std::gcd(g, std::labs(to_long(a)));
        if (g == 0) return std::nullopt;
        return g;
    }

    /// Maximal isotropy order over all points that are not fixed.
    long global_isotropy() const {
        long best = 1;
        for (auto& [s, f] : p_.faces())
            if (auto q = isotropy_order(s)) best = std::max(best, *q);
        return best;
    }

    /// Largest isotropy order among non-fixed points with K > c.
    long superlevel_isotropy_bound(const std::optional<Rat>& c) const {
        long best = 1;
        for (auto& [s, f] : p_.faces()) {
            auto q = isotropy_order(s);
            if (!q) continue;
            if (c && K_range_max(s) <= *c) continue;
            best = std::max(best, *q);
        }
        return best;
    }

    /// Connected components of the points with stabilizer containing Z/(q), as sets of faces.
    std::vector<std::vector<FacetSet>> isotropy_components(long q) const {
        if (q < 1) fail(ErrorKind::InvalidArgument, "isotropy order must be positive");
        std::vector<FacetSet> faces;
        for (auto& [s, f] : p_.faces()) {
            auto o = isotropy_order(s);
            if (!o || *o % q == 0) faces.push_back(s);
        }
        std::vector<std::size_t> parent(faces.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t a = 0; a < faces.size(); ++a)
            for (std::size_t b = a + 1; b < faces.size(); ++b)
                if (is_subset(faces[a], faces[b]) || is_subset(faces[b], faces[a])) parent[find(a)] = find(b);
        std::map<std::size_t, std::vector<FacetSet>> groups;
        for (std::size_t a = 0; a < faces.size(); ++a) groups[find(a)].push_back(faces[a]);
        std::vector<std::vector<FacetSet>> out;
        for (auto& [root, g] : groups) out.push_back(std::move(g));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Largest q with both components in one component of the Z/(q)-fixed set.
    long q_pair(FacetSet a, FacetSet b) const {
        for (long q = global_isotropy(); q > 1; --q)
            for (auto& comp : isotropy_components(q))
                if (std::count(comp.begin(), comp.end(), a) && std::count(comp.begin(), comp.end(), b)) return q;
        return 1;
    }

    /// [K, -m] at F_max after checking that all fixed points agree modulo (omega, c1) of H_2.
    std::pair<Rat, long> action_invariant() const {
        std::vector<std::pair<Rat, long>> gens;
        for (auto& b : p_.h2_lattice()) gens.emplace_back(b.omega, b.c1);
        const FixedComponent& top = f_max();
        for (auto& f : fixed_)
            if (!in_pair_lattice(gens, f.K - top.K, -f.m + top.m))
                fail(ErrorKind::InvariantMismatch, "fixed components " + to_string(top) + " and " + to_string(f) + " disagree");
        return {top.K, -top.m};
    }

    /// Betti numbers of the toric submanifold over a face.
    std::vector<int> face_betti(FacetSet face) const {
        for (long M = 2;; ++M) {
            IntVec generic(static_cast<std::size_t>(p_.dim()));
            long power = 1;
            for (auto& g : generic) {
                g = power;
                power *= M;
            }
            try {
                return morse_betti(p_, generic, face);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NonGenericVector || M > 64) throw;
            }
        }
    }

private:
    void build() {
        for (auto& [s, f] : p_.faces()) {
            if (!is_fixed(s)) continue;
            bool maximal = true;
            for (auto& [s2, f2] : p_.faces())
                if (s2 != s && is_subset(s2, s) && is_fixed(s2)) {
                    maximal = false;
                    break;
                }
            if (maximal) fixed_.push_back(make_component(s));
        }
        std::sort(fixed_.begin(), fixed_.end(), [](const FixedComponent& a, const FixedComponent& b) {
            if (a.K != b.K) return a.K > b.K;
            return a.face < b.face;
        });
    }

    FixedComponent make_component(FacetSet s) const {
        FixedComponent c;
        c.face = s;
        const Face& f = p_.face(s);
        c.real_dim = 2 * f.dim;
        c.K = K_at_vertex(p_.least_vertex(s));
        bool first = true;
        for (std::size_t v : f.vertices) {
            if (K_at_vertex(v) != c.K) fail(ErrorKind::InconsistentWeights, "K is not constant on " + facet_set_name(s));
            auto coords = p_.vertex_coordinates(v, xi_);
            std::map<int, long> w;
            for (auto& [j, a] : coords) {
                if (!contains(s, j)) {
                    if (a != 0) fail(ErrorKind::InconsistentWeights, "nonzero weight on a tangent direction of " + facet_set_name(s));
                    continue;
                }
                w[j] = -to_long(a);
            }
            if (first)
                c.weights = std::move(w);
            else if (w != c.weights)
                fail(ErrorKind::InconsistentWeights, "weights differ across " + facet_set_name(s));
            first = false;
        }
        for (auto& [j, wt] : c.weights) {
            c.m += wt;
            if (wt < 0) c.index += 2;
            if (wt > 0) c.coindex += 2;
            if (wt != 1 && wt != -1) c.semifree = false;
        }
        return c;
    }

    DelzantPolytope p_;
    IntVec xi_;
    RatVec center_;
    std::vector<FixedComponent> fixed_;
};

} // namespace toricqh

#endif
