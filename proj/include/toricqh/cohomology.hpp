#ifndef TORICQH_COHOMOLOGY_HPP
#define TORICQH_COHOMOLOGY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "polytope.hpp"

namespace toricqh {

/// Classical normal form together with the Stanley-Reisner part of f - nf(f):
/// f = nf + sum_I sr[I] * g_I + (element of the linear ideal).
struct ClassicalTrace {
    PolyQ nf;
    std::map<int, PolyQ> sr;
};

/// Cohomology ring of the toric manifold of a face (or of the whole polytope when the face is empty).
class FaceRing {
public:
    FaceRing(const DelzantPolytope& p, FacetSet face) : face_(face), nvars_(p.num_facets()) {
        const int N = p.num_facets();
        const int n = p.dim();
        const Face& f = p.face(face);
        dim_ = f.dim;
        FacetSet meeting = 0;
        for (int k = 0; k < N; ++k)
            if (!contains(face, k) && p.in_sigma(face | facet_bit(k))) meeting |= facet_bit(k);
        std::vector<PolyQ> gens;
        for (int k = 0; k < N; ++k)
            if (!contains(meeting, k)) gens.push_back(PolyQ::variable(N, k));
        // linear relations from functionals vanishing on the normals of the face
        RatMatrix normals;
        for (int i : members(face)) normals.push_back(linalg::to_rat({p.facet(i).normal})[0]);
        for (auto& xi : linalg::nullspace(normals, static_cast<std::size_t>(n))) {
            PolyQ rel(N);
            for (int k : members(meeting)) rel.add_term(PolyQ::variable(N, k).leading_monomial(), p.pair(p.facet(k).normal, xi));
            gens.push_back(rel);
        }
        // minimal non-faces among the facets meeting the face
        std::vector<FacetSet> nonfaces;
        for (FacetSet k = meeting;; k = (k - 1) & meeting) {
            if (k != 0 && !p.in_sigma(face | k)) nonfaces.push_back(k);
            if (k == 0) break;
        }
        for (FacetSet k : nonfaces) {
            bool minimal = true;
            for (FacetSet other : nonfaces)
                if (other != k && is_subset(other, k)) minimal = false;
            if (!minimal) continue;
            Monomial m(static_cast<std::size_t>(N), 0);
            for (int i : members(k)) m[static_cast<std::size_t>(i)] = 1;
            gens.push_back(PolyQ::monomial(m));
        }
        gb_ = GroebnerBasis(N, std::move(gens));
        const Vertex& v = p.vertices()[p.least_vertex(face)];
        Monomial m(static_cast<std::size_t>(N), 0);
        for (int i : members(v.facets & ~face)) m[static_cast<std::size_t>(i)] = 1;
        reference_ = gb_.normal_form(PolyQ::monomial(m));
    }

    FacetSet face() const { return face_; }
    int dim() const { return dim_; }
    const GroebnerBasis& gb() const { return gb_; }
    PolyQ normal_form(const PolyQ& f) const { return gb_.normal_form(f); }

    /// Integral over the face's toric manifold of the top-degree part of f.
    Rat integrate_top(const PolyQ& f) const {
        PolyQ top(nvars_);
        for (auto& [m, c] : f.terms())
            if (total_degree(m) == dim_) top.add_term(m, c);
        PolyQ r = gb_.normal_form(top);
        if (r.is_zero()) return 0;
        return r.coefficient(reference_.leading_monomial()) / reference_.leading_coefficient();
    }

private:
    FacetSet face_;
    int nvars_;
    int dim_ = 0;
    GroebnerBasis gb_;
    PolyQ reference_;
};

/// H*(M; Q) = Q[x_1..x_N] / (P + SR) with traced normal forms.
class ClassicalRing {
public:
    explicit ClassicalRing(DelzantPolytope p) : polytope_(std::move(p)), cache_(std::make_shared<Cache>()) {
        const int N = polytope_.num_facets();
        const int n = polytope_.dim();
        for (int k = 0; k < n; ++k) {
            PolyQ rel(N);
            for (int i = 0; i < N; ++i) {
                long c = polytope_.facet(i).normal[static_cast<std::size_t>(k)];
                if (c != 0) rel.add_term(PolyQ::variable(N, i).leading_monomial(), Rat(c));
            }
            linear_.push_back(rel);
        }
        primitive_ = polytope_.primitive_sets();
        for (auto& ps : primitive_) {
            Monomial m(static_cast<std::size_t>(N), 0);
            for (int i : members(ps.indices)) m[static_cast<std::size_t>(i)] = 1;
            sr_.push_back(PolyQ::monomial(m));
        }
        std::vector<PolyQ> gens = linear_;
        gens.insert(gens.end(), sr_.begin(), sr_.end());
        gb_ = GroebnerBasis(N, gens);
        basis_by_degree_ = gb_.standard_monomials_by_degree();
        for (auto& level : basis_by_degree_) {
            betti_.push_back(static_cast<int>(level.size()));
            basis_.insert(basis_.end(), level.begin(), level.end());
        }
        reference_vertex_ = polytope_.vertices().front().facets;
        reference_ = gb_.normal_form(vertex_monomial(reference_vertex_));
    }

    const DelzantPolytope& polytope() const { return polytope_; }
    int nvars() const { return polytope_.num_facets(); }
    int dim() const { return polytope_.dim(); }
    const std::vector<PolyQ>& linear_generators() const { return linear_; }
    const std::vector<PolyQ>& sr_generators() const { return sr_; }
    const std::vector<PrimitiveSet>& primitive_sets() const { return primitive_; }
    const GroebnerBasis& gb() const { return gb_; }

    /// Standard monomials in increasing degree.
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<std::vector<Monomial>>& basis_by_degree() const { return basis_by_degree_; }

    /// Dimensions of H^{2k}, k = 0..n.
    const std::vector<int>& betti() const { return betti_; }

    PolyQ variable(int i) const { return PolyQ::variable(nvars(), i); }
    PolyQ one() const { return PolyQ(nvars(), Rat(1)); }

    PolyQ vertex_monomial(FacetSet s) const {
        Monomial m(static_cast<std::size_t>(nvars()), 0);
        for (int i : members(s)) m[static_cast<std::size_t>(i)] = 1;
        return PolyQ::monomial(m);
    }

    FacetSet reference_vertex() const { return reference_vertex_; }

    PolyQ normal_form(const PolyQ& f) const {
        PolyQ out(nvars());
        for (auto& [m, c] : f.terms()) out += monomial_trace(m).nf * c;
        return out;
    }

    ClassicalTrace traced(const PolyQ& f) const {
        ClassicalTrace out{PolyQ(nvars()), {}};
        for (auto& [m, c] : f.terms()) {
            const ClassicalTrace& t = monomial_trace(m);
            out.nf += t.nf * c;
            for (auto& [i, h] : t.sr) {
                auto& slot = out.sr[i];
                slot += h * c;
                if (slot.is_zero()) out.sr.erase(i);
            }
        }
        return out;
    }

    /// Memoized trace of a single monomial.
    const ClassicalTrace& monomial_trace(const Monomial& m) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->traces.find(m);
        if (it != cache_->traces.end()) return it->second;
        Division div = gb_.divide(PolyQ::monomial(m));
        Cofactors cf = gb_.trace(div);
        ClassicalTrace t{div.remainder, {}};
        const int offset = static_cast<int>(linear_.size());
        for (auto& [g, h] : cf)
            if (g >= offset) t.sr[g - offset] = h;
        return cache_->traces.emplace(m, std::move(t)).first->second;
    }

    Rat integrate(const PolyQ& f) const {
        if (f.is_zero()) return 0;
        if (f.homogeneous_degree() != dim())
            fail(ErrorKind::WrongDegree, "integrand must be homogeneous of degree " + std::to_string(2 * dim()));
        return integrate_top(f);
    }

    Rat integrate_top(const PolyQ& f) const {
        PolyQ top(nvars());
        for (auto& [m, c] : f.terms())
            if (total_degree(m) == dim()) top.add_term(m, c);
        PolyQ r = normal_form(top);
        if (r.is_zero()) return 0;
        return r.coefficient(reference_.leading_monomial()) / reference_.leading_coefficient();
    }

    /// Intersection pairing; zero unless the degrees are complementary.
    Rat poincare_pair(const PolyQ& a, const PolyQ& b) const {
        int da = a.homogeneous_degree(), db = b.homogeneous_degree();
        if (da < 0 || db < 0 || da + db != dim()) return 0;
        return integrate(a * b);
    }

    /// Matrix of the pairing between standard monomials of degree k and of degree n-k.
    RatMatrix pd_matrix(int k) const {
        RatMatrix out;
        if (k < 0 || k > dim()) return out;
        for (auto& a : basis_by_degree_[static_cast<std::size_t>(k)]) {
            RatVec row;
            for (auto& b : basis_by_degree_[static_cast<std::size_t>(dim() - k)])
                row.push_back(integrate(PolyQ::monomial(mono_mul(a, b))));
            out.push_back(row);
        }
        return out;
    }

    FaceRing face_ring(FacetSet face) const { return FaceRing(polytope_, face); }

    /// Image of f under restriction to the toric submanifold of the face, in that face's ring.
    PolyQ restrict_to_face(const PolyQ& f, FacetSet face, const FaceRing& ring) const {
        const int N = nvars();
        std::vector<PolyQ> images;
        for (int i = 0; i < N; ++i) images.push_back(variable(i));
        if (face != 0) {
            const std::size_t v = polytope_.least_vertex(face);
            auto t = members(polytope_.vertices()[v].facets);
            const int n = dim();
            RatMatrix basis(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        polytope_.facet(t[static_cast<std::size_t>(r)]).normal[static_cast<std::size_t>(c)];
            for (int i : members(face)) {
                RatVec rhs(static_cast<std::size_t>(n), Rat(0));
                for (int r = 0; r < n; ++r)
                    if (t[static_cast<std::size_t>(r)] == i) rhs[static_cast<std::size_t>(r)] = 1;
                auto xi = linalg::solve(basis, rhs);
                if (!xi) fail(ErrorKind::RestrictionNotResolved, "singular vertex basis");
                PolyQ img(N);
                for (int k = 0; k < N; ++k) {
                    if (contains(polytope_.vertices()[v].facets, k)) continue;
                    Rat c = polytope_.pair(polytope_.facet(k).normal, *xi);
                    if (c != 0) img.add_term(variable(k).leading_monomial(), -c);
                }
                images[static_cast<std::size_t>(i)] = img;
            }
        }
        return ring.normal_form(substitute(f, images, N));
    }

    PolyQ restrict_to_face(const PolyQ& f, FacetSet face) const { return restrict_to_face(f, face, face_ring(face)); }

private:
    struct Cache {
        std::mutex mutex;
        std::map<Monomial, ClassicalTrace> traces;
    };

    DelzantPolytope polytope_;
    std::vector<PolyQ> linear_;
    std::vector<PolyQ> sr_;
    std::vector<PrimitiveSet> primitive_;
    GroebnerBasis gb_;
    std::vector<Monomial> basis_;
    std::vector<std::vector<Monomial>> basis_by_degree_;
    std::vector<int> betti_;
    FacetSet reference_vertex_ = 0;
    PolyQ reference_;
    std::shared_ptr<Cache> cache_;
};

/// Betti numbers from a perfect Morse function: count edges along which K decreases at each vertex.
inline std::vector<int> morse_betti(const DelzantPolytope& p, const IntVec& xi, FacetSet face = 0) {
    const Face& f = p.face(face);
    std::vector<int> out(static_cast<std::size_t>(f.dim) + 1, 0);
    for (std::size_t vi : f.vertices) {
        const Vertex& v = p.vertices()[vi];
        Rat kv = p.pair(xi, v.point);
        int down = 0;
        for (int i : members(v.facets & ~face)) {
            FacetSet edge = v.facets & ~facet_bit(i);
            const Face& e = p.face(edge);
            std::size_t other = e.vertices[0] == vi ? e.vertices[1] : e.vertices[0];
            Rat kw = p.pair(xi, p.vertices()[other].point);
            if (kw == kv) fail(ErrorKind::NonGenericVector, "K is constant along edge " + facet_set_name(edge));
            if (kw < kv) ++down;
        }
        ++out[static_cast<std::size_t>(down)];
    }
    return out;
}

inline std::vector<int> betti_morse(const DelzantPolytope& p, const IntVec& xi) { return morse_betti(p, xi); }

} // namespace toricqh

#endif
