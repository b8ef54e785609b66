#ifndef TORICQH_POLYTOPE_HPP
#define TORICQH_POLYTOPE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace toricqh {

using linalg::IntMatrix;
using linalg::IntVec;
using linalg::RatMatrix;
using linalg::RatVec;

/// A set of facet indices (bit i = facet i, 0-based). The empty set denotes the whole polytope.
using FacetSet = std::uint64_t;

inline FacetSet facet_bit(int i) { return FacetSet{1} << i; }
inline int popcount(FacetSet s) { return std::popcount(s); }
inline bool contains(FacetSet s, int i) { return (s >> i) & 1u; }
inline bool is_subset(FacetSet a, FacetSet b) { return (a & ~b) == 0; }

inline std::vector<int> members(FacetSet s) {
    std::vector<int> out;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

inline FacetSet make_set(std::initializer_list<int> idx) {
    FacetSet s = 0;
    for (int i : idx) s |= facet_bit(i);
    return s;
}

/// "{1,3}" style rendering with 1-based facet numbers.
inline std::string facet_set_name(FacetSet s) {
    std::string out = "{";
    bool first = true;
    for (int i : members(s)) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

struct Facet {
    IntVec normal;
    Rat support;
    std::string label;
};

struct Vertex {
    RatVec point;
    FacetSet facets;
};

struct Face {
    FacetSet facets;
    int dim;
    std::vector<std::size_t> vertices; // indices into DelzantPolytope::vertices()
};

/// Element of H_2(M; Z) as the tuple of pairings with the facet classes x_i.
struct H2Class {
    IntVec pairings;
    Rat omega;
    long c1 = 0;
};

struct PrimitiveSet {
    FacetSet indices = 0;
    std::vector<std::pair<int, long>> complement; // (j, c_j) with c_j > 0
    H2Class beta;
};

struct DualConeResult {
    FacetSet face = 0;
    std::map<int, Rat> coefficients;
};

class DelzantPolytope {
public:
    /// Validates raw facet data and builds vertex and face data.
    static DelzantPolytope validate(int dim, std::vector<Facet> facets, std::string name = {}) {
        DelzantPolytope p;
        p.name_ = std::move(name);
        p.dim_ = dim;
        p.facets_ = std::move(facets);
        p.build();
        return p;
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    int num_facets() const { return static_cast<int>(facets_.size()); }
    const std::vector<Facet>& facets() const { return facets_; }
    const Facet& facet(int i) const { return facets_.at(static_cast<std::size_t>(i)); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::map<FacetSet, Face>& faces() const { return faces_; }
    FacetSet all_facets() const { return num_facets() == 64 ? ~FacetSet{0} : facet_bit(num_facets()) - 1; }

    /// Whether the facets in s have nonempty common intersection.
    bool in_sigma(FacetSet s) const { return faces_.count(s) != 0; }

    const Face& face(FacetSet s) const {
        auto it = faces_.find(s);
        if (it == faces_.end()) fail(ErrorKind::InvalidArgument, "no face with facet set " + facet_set_name(s));
        return it->second;
    }

    std::size_t vertex_index(FacetSet s) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].facets == s) return i;
        fail(ErrorKind::InvalidArgument, facet_set_name(s) + " is not a vertex");
    }

    /// Lexicographically least vertex of a face.
    std::size_t least_vertex(FacetSet s) const {
        const Face& f = face(s);
        return *std::min_element(f.vertices.begin(), f.vertices.end());
    }

    /// Coefficients of v in the normal basis {eta_j : j at vertex}; exact, integral for integral v.
    std::map<int, Rat> vertex_coordinates(std::size_t vertex, const RatVec& v) const {
        auto idx = members(vertices_.at(vertex).facets);
        RatMatrix a(static_cast<std::size_t>(dim_), RatVec(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (int r = 0; r < dim_; ++r) a[static_cast<std::size_t>(r)][c] = facets_[static_cast<std::size_t>(idx[c])].normal[static_cast<std::size_t>(r)];
        auto sol = linalg::solve(a, v);
        if (!sol) fail(ErrorKind::NotSmooth, "vertex normals do not form a basis");
        std::map<int, Rat> out;
        for (std::size_t c = 0; c < idx.size(); ++c) out[idx[c]] = (*sol)[c];
        return out;
    }

    std::map<int, Rat> vertex_coordinates(std::size_t vertex, const IntVec& v) const {
        RatVec rv;
        for (long x : v) rv.emplace_back(x);
        return vertex_coordinates(vertex, rv);
    }

    Rat pair(const IntVec& xi, const RatVec& point) const {
        Rat s = 0;
        for (std::size_t k = 0; k < point.size(); ++k) s += xi[k] * point[k];
        return s;
    }

    // ---- lattice data -------------------------------------------------

    Rat omega(const IntVec& a) const {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * facets_[i].support;
        return s;
    }

    long c1(const IntVec& a) const {
        long s = 0;
        for (long v : a) s += v;
        return s;
    }

    bool in_h2(const IntVec& a) const {
        for (int r = 0; r < dim_; ++r) {
            long s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * facets_[i].normal[static_cast<std::size_t>(r)];
            if (s != 0) return false;
        }
        return true;
    }

    H2Class h2_class(IntVec a) const {
        H2Class b;
        b.omega = omega(a);
        b.c1 = c1(a);
        b.pairings = std::move(a);
        return b;
    }

    /// Integer basis of {a : sum a_i eta_i = 0}.
    std::vector<H2Class> h2_lattice() const {
        IntMatrix m(static_cast<std::size_t>(dim_), IntVec(facets_.size()));
        for (std::size_t i = 0; i < facets_.size(); ++i)
            for (int r = 0; r < dim_; ++r) m[static_cast<std::size_t>(r)][i] = facets_[i].normal[static_cast<std::size_t>(r)];
        std::vector<H2Class> out;
        for (auto& k : linalg::integer_kernel(m, facets_.size())) out.push_back(h2_class(k));
        return out;
    }

    /// The unique face whose dual cone contains v, with the positive coefficients.
    DualConeResult dual_cone_face(const IntVec& v) const {
        if (v.size() != static_cast<std::size_t>(dim_)) fail(ErrorKind::InvalidArgument, "vector has wrong dimension");
        DualConeResult res;
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return res;
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            auto coords = vertex_coordinates(k, v);
            if (std::any_of(coords.begin(), coords.end(), [](const auto& e) { return e.second < 0; })) continue;
            for (auto& [j, c] : coords)
                if (c > 0) {
                    res.face |= facet_bit(j);
                    res.coefficients[j] = c;
                }
            return res;
        }
        fail(ErrorKind::InvalidArgument, "normal fan is not complete");
    }

    std::vector<PrimitiveSet> primitive_sets() const {
        std::vector<PrimitiveSet> out;
        const int n = num_facets();
        std::vector<FacetSet> candidates;
        for (FacetSet s = 1; s <= all_facets() && s != 0; ++s)
            if (popcount(s) >= 2) candidates.push_back(s);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](FacetSet a, FacetSet b) { return popcount(a) < popcount(b); });
        for (FacetSet s : candidates) {
            if (in_sigma(s)) continue;
            bool primitive = true;
            for (int i = 0; i < n && primitive; ++i)
                if (contains(s, i) && !in_sigma(s & ~facet_bit(i))) primitive = false;
            if (!primitive) continue;
            PrimitiveSet ps;
            ps.indices = s;
            fill_beta(ps);
            out.push_back(std::move(ps));
        }
        return out;
    }

    /// Class of the relation sum_{i in I} eta_i = sum_j c_j eta_j for a primitive I.
    void fill_beta(PrimitiveSet& ps) const {
        IntVec sum(static_cast<std::size_t>(dim_), 0);
        for (int i : members(ps.indices))
            for (int r = 0; r < dim_; ++r) sum[static_cast<std::size_t>(r)] += facets_[static_cast<std::size_t>(i)].normal[static_cast<std::size_t>(r)];
        auto dc = dual_cone_face(sum);
        IntVec a(facets_.size(), 0);
        for (int i : members(ps.indices)) a[static_cast<std::size_t>(i)] = 1;
        ps.complement.clear();
        for (auto& [j, c] : dc.coefficients) {
            if (!is_integer(c))
                fail(ErrorKind::NonIntegralCoefficient, "dual cone coefficient " + c.get_str() + " for " + facet_set_name(ps.indices));
            if (contains(ps.indices, j))
                fail(ErrorKind::InvalidArgument, "primitive set meets its dual-cone face: " + facet_set_name(ps.indices));
            long cj = to_long(c);
            ps.complement.emplace_back(j, cj);
            a[static_cast<std::size_t>(j)] = -cj;
        }
        ps.beta = h2_class(std::move(a));
        if (ps.beta.omega <= 0)
            fail(ErrorKind::NonPositiveEnergy, "omega(beta) = " + ps.beta.omega.get_str() + " for " + facet_set_name(ps.indices));
    }

    /// Class of the sphere over a one-dimensional face.
    H2Class edge_class(FacetSet edge) const {
        const Face& e = face(edge);
        if (e.dim != 1 || e.vertices.size() != 2) fail(ErrorKind::InvalidArgument, "not an edge: " + facet_set_name(edge));
        const Vertex& v = vertices_[e.vertices[0]];
        const Vertex& w = vertices_[e.vertices[1]];
        int a = members(v.facets & ~edge).at(0);
        int b = members(w.facets & ~edge).at(0);
        auto beta = vertex_coordinates(e.vertices[0], facets_[static_cast<std::size_t>(b)].normal);
        IntVec pair(facets_.size(), 0);
        pair[static_cast<std::size_t>(a)] = 1;
        pair[static_cast<std::size_t>(b)] = 1;
        for (int j : members(edge)) pair[static_cast<std::size_t>(j)] = -to_long(beta.at(j));
        if (beta.at(a) != -1) fail(ErrorKind::NotSmooth, "edge " + facet_set_name(edge) + " is not smooth");
        return h2_class(std::move(pair));
    }

    std::vector<FacetSet> edges() const {
        std::vector<FacetSet> out;
        for (auto& [s, f] : faces_)
            if (f.dim == 1) out.push_back(s);
        return out;
    }

    // ---- centroid -----------------------------------------------------

    /// Exact centroid under Lebesgue measure (fan triangulation from least vertices).
    RatVec centroid() const {
        std::vector<std::vector<std::size_t>> simplices;
        triangulate(0, simplices);
        RatVec acc(static_cast<std::size_t>(dim_), Rat(0));
        Rat total = 0;
        for (auto& simplex : simplices) {
            const RatVec& v0 = vertices_[simplex[0]].point;
            RatMatrix m(static_cast<std::size_t>(dim_), RatVec(static_cast<std::size_t>(dim_)));
            for (int c = 0; c < dim_; ++c)
                for (int r = 0; r < dim_; ++r)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        vertices_[simplex[static_cast<std::size_t>(c) + 1]].point[static_cast<std::size_t>(r)] - v0[static_cast<std::size_t>(r)];
            Rat vol = abs(linalg::det(m));
            total += vol;
            for (int r = 0; r < dim_; ++r) {
                Rat s = 0;
                for (auto k : simplex) s += vertices_[k].point[static_cast<std::size_t>(r)];
                acc[static_cast<std::size_t>(r)] += vol * s / (dim_ + 1);
            }
        }
        for (auto& a : acc) a /= total;
        return acc;
    }

    DelzantPolytope translated(const RatVec& shift) const {
        auto fs = facets_;
        for (auto& f : fs) {
            Rat s = 0;
            for (int r = 0; r < dim_; ++r) s += f.normal[static_cast<std::size_t>(r)] * shift[static_cast<std::size_t>(r)];
            f.support += s;
        }
        return validate(dim_, std::move(fs), name_);
    }

    /// Translates so that the centroid is the origin.
    DelzantPolytope normalize() const {
        auto c = centroid();
        for (auto& x : c) x = -x;
        return translated(c);
    }

private:
    void build() {
        const int n = dim_;
        const int N = num_facets();
        if (n < 1) fail(ErrorKind::InvalidArgument, "dimension must be at least 1");
        if (N > 63) fail(ErrorKind::InvalidArgument, "at most 63 facets supported");
        if (N < n + 1) fail(ErrorKind::Unbounded, "need at least dim+1 facets");
        for (int i = 0; i < N; ++i) {
            const auto& nv = facets_[static_cast<std::size_t>(i)].normal;
            if (nv.size() != static_cast<std::size_t>(n))
                fail(ErrorKind::InvalidArgument, "facet " + std::to_string(i + 1) + " normal has wrong length");
            if (linalg::content(nv) != 1)
                fail(ErrorKind::NonPrimitiveNormal, "facet " + std::to_string(i + 1) + " normal is not primitive");
        }
        IntMatrix normals;
        for (auto& f : facets_) normals.push_back(f.normal);
        if (linalg::rank(linalg::to_rat(normals)) < static_cast<std::size_t>(n))
            fail(ErrorKind::Unbounded, "normals do not span; the region contains a line");
        check_recession_cone(normals);
        find_vertices();
        if (vertices_.empty()) fail(ErrorKind::NotFullDimensional, "the inequalities have no common solution");
        RatVec avg(static_cast<std::size_t>(n), Rat(0));
        for (auto& v : vertices_)
            for (int r = 0; r < n; ++r) avg[static_cast<std::size_t>(r)] += v.point[static_cast<std::size_t>(r)];
        for (auto& a : avg) a /= static_cast<long>(vertices_.size());
        for (int i = 0; i < N; ++i)
            if (pair(facets_[static_cast<std::size_t>(i)].normal, avg) >= facets_[static_cast<std::size_t>(i)].support)
                fail(ErrorKind::NotFullDimensional, "polytope lies in the hyperplane of facet " + std::to_string(i + 1));
        for (int i = 0; i < N; ++i) {
            bool touched = std::any_of(vertices_.begin(), vertices_.end(), [&](const Vertex& v) { return contains(v.facets, i); });
            if (!touched) fail(ErrorKind::RedundantFacet, "facet " + std::to_string(i + 1) + " does not meet the polytope");
        }
        for (auto& v : vertices_) {
            if (popcount(v.facets) != n) fail(ErrorKind::NotSimple, "vertex on facets " + facet_set_name(v.facets));
            auto idx = members(v.facets);
            RatMatrix m(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = facets_[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])].normal[static_cast<std::size_t>(r)];
            Rat d = linalg::det(m);
            if (abs(d) != 1)
                fail(ErrorKind::NotSmooth, "vertex on facets " + facet_set_name(v.facets) + " has determinant " + d.get_str());
        }
        for (int i = 0; i < N; ++i) {
            long count = std::count_if(vertices_.begin(), vertices_.end(), [&](const Vertex& v) { return contains(v.facets, i); });
            if (count < n) fail(ErrorKind::RedundantFacet, "facet " + std::to_string(i + 1) + " is not a facet");
        }
        build_faces();
    }

    // A nonzero recession direction would be an extreme ray cut out by n-1 independent normals.
    void check_recession_cone(const IntMatrix& normals) const {
        const int n = dim_;
        const int N = num_facets();
        std::vector<int> pick;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(pick.size()) == n - 1) {
                RatMatrix a;
                for (int i : pick) a.push_back(linalg::to_rat({normals[static_cast<std::size_t>(i)]})[0]);
                auto ns = linalg::nullspace(a, static_cast<std::size_t>(n));
                if (ns.size() != 1) return;
                for (int sign : {1, -1}) {
                    bool ok = true;
                    for (int i = 0; i < N && ok; ++i) {
                        Rat s = 0;
                        for (int r = 0; r < n; ++r) s += sign * ns[0][static_cast<std::size_t>(r)] * normals[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
                        if (s > 0) ok = false;
                    }
                    if (ok) fail(ErrorKind::Unbounded, "the region has an unbounded direction");
                }
                return;
            }
            for (int i = start; i < N; ++i) {
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
    }

    void find_vertices() {
        const int n = dim_;
        const int N = num_facets();
        std::map<RatVec, FacetSet> found;
        std::vector<int> pick;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(pick.size()) == n) {
                RatMatrix a(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
                RatVec b(static_cast<std::size_t>(n));
                for (int r = 0; r < n; ++r) {
                    const auto& f = facets_[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
                    for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = f.normal[static_cast<std::size_t>(c)];
                    b[static_cast<std::size_t>(r)] = f.support;
                }
                auto x = linalg::solve(a, b);
                if (!x || found.count(*x)) return;
                FacetSet tight = 0;
                for (int i = 0; i < N; ++i) {
                    Rat v = pair(facets_[static_cast<std::size_t>(i)].normal, *x);
                    if (v > facets_[static_cast<std::size_t>(i)].support) return;
                    if (v == facets_[static_cast<std::size_t>(i)].support) tight |= facet_bit(i);
                }
                found.emplace(*x, tight);
                return;
            }
            for (int i = start; i < N; ++i) {
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        for (auto& [pt, s] : found) vertices_.push_back({pt, s}); // std::map order is lexicographic
    }

    void build_faces() {
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            FacetSet t = vertices_[k].facets;
            // enumerate all subsets of t
            for (FacetSet s = t;; s = (s - 1) & t) {
                auto& f = faces_[s];
                f.facets = s;
                f.dim = dim_ - popcount(s);
                f.vertices.push_back(k);
                if (s == 0) break;
            }
        }
    }

    // Simplices of the face with facet set s, each a list of dim(face)+1 vertex indices.
    void triangulate(FacetSet s, std::vector<std::vector<std::size_t>>& out) const {
        const Face& f = face(s);
        std::vector<std::vector<std::size_t>> local;
        triangulate_face(f, local);
        out = std::move(local);
    }

    void triangulate_face(const Face& f, std::vector<std::vector<std::size_t>>& out) const {
        if (f.dim == 0) {
            out.push_back({f.vertices[0]});
            return;
        }
        std::size_t v0 = *std::min_element(f.vertices.begin(), f.vertices.end());
        for (int k = 0; k < num_facets(); ++k) {
            if (contains(f.facets, k)) continue;
            FacetSet sub = f.facets | facet_bit(k);
            auto it = faces_.find(sub);
            if (it == faces_.end() || it->second.dim != f.dim - 1) continue;
            if (contains(vertices_[v0].facets, k)) continue;
            std::vector<std::vector<std::size_t>> part;
            triangulate_face(it->second, part);
            for (auto& simplex : part) {
                simplex.insert(simplex.begin(), v0);
                out.push_back(std::move(simplex));
            }
        }
    }

    std::string name_;
    int dim_ = 0;
    std::vector<Facet> facets_;
    std::vector<Vertex> vertices_;
    std::map<FacetSet, Face> faces_;
};

} // namespace toricqh

#endif
