#ifndef TORICQH_SEIDEL_HPP
#define TORICQH_SEIDEL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circle.hpp"
#include "quantum.hpp"

namespace toricqh {

struct SeidelElement {
    QPoly value;
    IntVec xi;
    Mode mode = Mode::Fano;
    std::size_t vertex = 0;
    FacetSet fmax = 0;
    long m_max = 0;
    Rat K_max;
};

struct LeadingTermReport {
    bool applicable = false;
    bool leading_ok = false;
    bool exactness_predicted = false;
    std::optional<bool> exact_ok;
    QPoly expected_leading;
    QPoly observed_leading;
    std::vector<std::string> notes;
};

/// Seidel elements of torus circles in cohomology orientation: S(Lambda_i) = Y_i q^-1 t^-eta_i(D_i).
class SeidelEngine {
public:
    explicit SeidelEngine(QuantumPresentation qp) : qp_(std::move(qp)), cache_(std::make_shared<Cache>()) {
        const DelzantPolytope& p = qp_.polytope();
        RatVec c = p.centroid();
        for (auto& f : p.facets()) {
            Rat s = f.support;
            for (std::size_t k = 0; k < c.size(); ++k) s -= f.normal[k] * c[k];
            supports_.push_back(s);
        }
    }

    const QuantumPresentation& presentation() const { return qp_; }
    const DelzantPolytope& polytope() const { return qp_.polytope(); }

    /// Support of facet i for the mean-normalized moment map.
    const Rat& support(int i) const { return supports_.at(static_cast<std::size_t>(i)); }

    QPoly facet_seidel(int i) const {
        if (i < 0 || i >= qp_.nvars()) fail(ErrorKind::InvalidArgument, "no facet " + std::to_string(i + 1));
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto it = cache_->facet.find(i);
            if (it != cache_->facet.end()) return it->second;
        }
        const Rat& s = support(i);
        QPoly out = qp_.zero();
        if (qp_.mode() == Mode::Nef) {
            if (!qp_.has_y(i)) fail(ErrorKind::MissingYEntry, "no Y entry for facet " + std::to_string(i + 1));
            QPoly y = qp_.ytable().at(i).expand(qp_.cutoff() + s).shifted(-1, -s);
            y.set_cutoff(qp_.cutoff());
            out = qp_.nf(y);
        } else {
            out = qp_.nf(qp_.monomial(qp_.classical().variable(i), -1, -s));
        }
        std::lock_guard<std::mutex> lock(cache_->mutex);
        cache_->facet.emplace(i, out);
        return out;
    }

    QPoly facet_seidel_inverse(int i) const {
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto it = cache_->inverse.find(i);
            if (it != cache_->inverse.end()) return it->second;
        }
        QPoly inv = qp_.inv(facet_seidel(i));
        std::lock_guard<std::mutex> lock(cache_->mutex);
        cache_->inverse.emplace(i, inv);
        return inv;
    }

    /// Product of facet elements over the decomposition of xi at a vertex (default: the reference vertex).
    SeidelElement element(const IntVec& xi, std::optional<std::size_t> vertex = std::nullopt) const {
        CircleAction action(polytope(), xi);
        SeidelElement out;
        out.xi = xi;
        out.mode = qp_.mode();
        out.vertex = vertex ? *vertex : 0;
        out.fmax = action.f_max().face;
        out.m_max = action.f_max().m;
        out.K_max = action.f_max().K;
        QPoly value = qp_.one();
        for (auto& [j, a] : polytope().vertex_coordinates(out.vertex, xi)) {
            long k = to_long(a);
            if (k == 0) continue;
            QPoly factor = k > 0 ? facet_seidel(j) : facet_seidel_inverse(j);
            for (long r = 0; r < std::labs(k); ++r) value = qp_.mul(value, factor);
        }
        out.value = std::move(value);
        return out;
    }

    /// Leading-term check for semifree F_max, plus the exactness prediction when every toric
    /// edge sphere meeting F_max has 2 c1 >= codim F_max.
    LeadingTermReport verify_leading_term(const IntVec& xi, const QPoly* fmax_class = nullptr) const {
        CircleAction action(polytope(), xi);
        const FixedComponent& F = action.f_max();
        SeidelElement s = element(xi);
        LeadingTermReport r;
        const ClassicalRing& cl = qp_.classical();
        PolyQ pd = cl.one();
        for (int j : members(F.face)) pd = pd * cl.variable(j);
        pd = cl.normal_form(pd);
        r.expected_leading = qp_.monomial(pd, F.m, -F.K);
        if (!s.value.is_zero()) {
            Rat v = s.value.valuation();
            QPoly lead = qp_.zero();
            for (auto& [k, p] : s.value.terms())
                if (k.kappa == v) lead.add_term(k, p);
            r.observed_leading = lead;
        } else {
            r.observed_leading = qp_.zero();
        }
        if (!F.semifree) {
            r.notes.push_back("F_max " + to_string(F) + " is not semifree; the leading-term formula does not apply");
            return r;
        }
        r.applicable = true;
        r.leading_ok = (r.observed_leading - r.expected_leading).is_zero();
        const int codim = 2 * popcount(F.face);
        bool predicted = true;
        const auto& fverts = polytope().face(F.face).vertices;
        for (FacetSet e : polytope().edges()) {
            const auto& ev = polytope().face(e).vertices;
            bool meets = std::any_of(ev.begin(), ev.end(), [&](std::size_t v) {
                return std::find(fverts.begin(), fverts.end(), v) != fverts.end();
            });
            if (meets && 2 * polytope().edge_class(e).c1 < codim) predicted = false;
        }
        r.exactness_predicted = predicted;
        if (!predicted) return r;
        r.notes.push_back("exactness checked on toric edge spheres only, under the " + to_string(qp_.mode()) + " assertion");
        std::optional<QPoly> cls;
        if (fmax_class)
            cls = *fmax_class;
        else if (popcount(F.face) == 1)
            cls = qp_.x(members(F.face).front());
        if (!cls) {
            r.notes.push_back("no dictionary class for " + to_string(F) + "; only the leading term was compared");
            return r;
        }
        r.exact_ok = (s.value - qp_.mul(*cls, qp_.monomial(cl.one(), F.m, -F.K))).is_zero();
        return r;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<int, QPoly> facet;
        std::map<int, QPoly> inverse;
    };

    QuantumPresentation qp_;
    RatVec supports_;
    std::shared_ptr<Cache> cache_;
};

struct HomologyTerm {
    std::string name;
    Rat coeff;
    long d = 0;
    Rat kappa;
};

struct HomologyReport {
    std::vector<HomologyTerm> terms;
    std::optional<Rat> precision;
};

/// Names for the classes a quantum element is reported in: [M], named degree-2 classes and,
/// in dimension four, the point class.
class GeometricDictionary {
public:
    GeometricDictionary(const SeidelEngine& engine, const std::vector<std::pair<std::string, std::string>>& classes)
        : qp_(engine.presentation()) {
        const ClassicalRing& cl = qp_.classical();
        const int N = qp_.nvars();
        for (auto& [name, text] : classes) {
            Fraction f = parse_expression(text, N);
            if (!f.trivial_denominator() || f.num.terms().size() != 1 || !(f.num.terms().begin()->first == NovKey{0, 0}))
                fail(ErrorKind::Parse, "class " + name + " must be a classical expression");
            PolyQ poly = cl.normal_form(f.num.terms().begin()->second);
            if (poly.homogeneous_degree() == 1) named_.emplace_back(name, poly);
        }
        document_names_ = named_.size();
        for (int i = 0; i < N; ++i) named_.emplace_back("x" + std::to_string(i + 1), cl.normal_form(cl.variable(i)));
        if (cl.dim() == 2) build_point(engine);
    }

    const std::optional<QPoly>& point_lift() const { return point_; }
    std::size_t point_vertex() const { return point_vertex_; }
    const std::string& point_name() const { return point_name_; }

    /// Value of a class name (including the point class name) as a quantum element.
    std::optional<QPoly> lookup(const std::string& name) const {
        if (point_ && name == point_name_) return point_;
        for (auto& [n, p] : named_)
            if (n == name) return qp_.lift(p);
        return std::nullopt;
    }

    HomologyReport report(const QPoly& value) const {
        const ClassicalRing& cl = qp_.classical();
        HomologyReport out;
        QPoly rem = qp_.nf(value);
        const int n = cl.dim();
        if (n == 2 && point_) {
            const Monomial top = cl.basis_by_degree().at(2).front();
            const Rat top_c = point_->terms().at(NovKey{0, 0}).coefficient(top);
            while (true) {
                auto it = std::find_if(rem.terms().begin(), rem.terms().end(), [&](const auto& e) { return e.second.coefficient(top) != 0; });
                if (it == rem.terms().end()) break;
                NovKey k = it->first;
                Rat lambda = it->second.coefficient(top) / top_c;
                out.terms.push_back({point_name_, lambda, k.d, k.kappa});
                rem -= point_->shifted(k.d, k.kappa).scaled(lambda);
            }
        }
        for (auto& [k, p] : rem.terms())
            for (auto& [m, c] : p.terms())
                if (total_degree(m) > 1 && total_degree(m) < n)
                    fail(ErrorKind::DictionaryIncomplete, "no named class in degree " + std::to_string(2 * total_degree(m)));
                else if (total_degree(m) == n && n > 1)
                    fail(ErrorKind::DictionaryIncomplete, "no point class available");
        for (auto& [k, p] : rem.terms()) {
            PolyQ deg2(qp_.nvars());
            for (auto& [m, c] : p.terms()) {
                if (total_degree(m) == 0) out.terms.push_back({"[M]", c, k.d, k.kappa});
                if (total_degree(m) == 1) deg2.add_term(m, c);
            }
            if (!deg2.is_zero())
                for (auto& [name, c] : decompose(deg2)) out.terms.push_back({name, c, k.d, k.kappa});
        }
        std::stable_sort(out.terms.begin(), out.terms.end(), [](const HomologyTerm& a, const HomologyTerm& b) {
            if (a.kappa != b.kappa) return a.kappa < b.kappa;
            return a.d < b.d;
        });
        for (auto& t : out.terms) {
            t.d = -t.d;
            t.kappa = -t.kappa;
        }
        if (rem.precision()) out.precision = Rat(-*rem.precision());
        return out;
    }

private:
    /// Writes a degree-2 class as a combination of named classes: a single document class, then a
    /// combination of document classes, then a single variable, then anything independent.
    std::vector<std::pair<std::string, Rat>> decompose(const PolyQ& v) const {
        auto single = [&](std::size_t from, std::size_t to) -> std::optional<std::pair<std::string, Rat>> {
            for (std::size_t k = from; k < to; ++k) {
                const PolyQ& p = named_[k].second;
                Rat ratio = v.coefficient(p.leading_monomial()) / p.leading_coefficient();
                if (ratio != 0 && v == p * ratio) return std::make_pair(named_[k].first, ratio);
            }
            return std::nullopt;
        };
        if (auto s = single(0, document_names_)) return {*s};
        if (auto c = combination(v, document_names_)) return *c;
        if (auto s = single(document_names_, named_.size())) return {*s};
        if (auto c = combination(v, named_.size())) return *c;
        fail(ErrorKind::DictionaryIncomplete, "degree-2 class outside the named span");
    }

    std::optional<std::vector<std::pair<std::string, Rat>>> combination(const PolyQ& v, std::size_t upto) const {
        const auto& basis = qp_.classical().basis_by_degree().at(1);
        auto column = [&](const PolyQ& p) {
            RatVec col;
            for (auto& m : basis) col.push_back(p.coefficient(m));
            return col;
        };
        auto as_matrix = [&](const std::vector<RatVec>& cols) {
            RatMatrix a(basis.size(), RatVec(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t r = 0; r < basis.size(); ++r) a[r][c] = cols[c][r];
            return a;
        };
        std::vector<std::size_t> chosen;
        std::vector<RatVec> cols;
        for (std::size_t k = 0; k < upto && chosen.size() < basis.size(); ++k) {
            auto trial = cols;
            trial.push_back(column(named_[k].second));
            if (linalg::rank(as_matrix(trial)) == trial.size()) {
                cols = std::move(trial);
                chosen.push_back(k);
            }
        }
        if (cols.empty()) return std::nullopt;
        auto sol = linalg::solve(as_matrix(cols), column(v));
        if (!sol) return std::nullopt;
        std::vector<std::pair<std::string, Rat>> out;
        for (std::size_t c = 0; c < chosen.size(); ++c)
            if ((*sol)[c] != 0) out.emplace_back(named_[chosen[c]].first, (*sol)[c]);
        return out;
    }

    void build_point(const SeidelEngine& engine) {
        const DelzantPolytope& p = engine.polytope();
        for (std::size_t v = 0; v < p.vertices().size(); ++v) {
            FacetSet s = p.vertices()[v].facets;
            bool eligible = true;
            for (FacetSet e : p.edges())
                if (is_subset(e, s) && 2 * p.edge_class(e).c1 < 4) eligible = false;
            if (!eligible) continue;
            auto idx = members(s);
            IntVec xi(static_cast<std::size_t>(p.dim()), 0);
            for (int j : idx)
                for (std::size_t k = 0; k < xi.size(); ++k) xi[k] += p.facet(j).normal[k];
            Rat K = engine.support(idx[0]) + engine.support(idx[1]);
            QPoly lift = engine.element(xi, v).value.shifted(2, K);
            lift.set_cutoff(qp_.cutoff());
            PolyQ classical(qp_.nvars());
            auto it = lift.terms().find(NovKey{0, 0});
            if (it != lift.terms().end()) classical = it->second;
            if (qp_.classical().integrate(classical) != 1)
                fail(ErrorKind::DictionaryIncomplete, "point lift does not integrate to 1");
            point_ = lift;
            point_vertex_ = v;
            return;
        }
        fail(ErrorKind::NoEligibleVertex, "no vertex whose edge spheres all have c1 >= 2");
    }

    QuantumPresentation qp_;
    std::vector<std::pair<std::string, PolyQ>> named_;
    std::size_t document_names_ = 0;
    std::optional<QPoly> point_;
    std::size_t point_vertex_ = 0;
    std::string point_name_ = "p";
};

/// Terms sharing a Novikov monomial are grouped, e.g. "(A + B) ⊗ q t^{5/12}".
inline std::string to_string(const HomologyReport& r) {
    auto coefficient_term = [](const HomologyTerm& t, bool first) {
        std::string mag = abs(t.coeff) == 1 ? "" : abs(t.coeff).get_str() + " ";
        std::string sign = t.coeff < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
        return sign + mag + t.name;
    };
    std::string out;
    for (std::size_t i = 0; i < r.terms.size();) {
        std::size_t j = i + 1;
        while (j < r.terms.size() && r.terms[j].d == r.terms[i].d && r.terms[j].kappa == r.terms[i].kappa) ++j;
        std::string nov = nov_monomial_string(r.terms[i].d, r.terms[i].kappa);
        std::string suffix = nov.empty() ? "" : " ⊗ " + nov;
        if (j - i == 1) {
            out += coefficient_term(r.terms[i], out.empty()) + suffix;
        } else {
            bool negated = r.terms[i].coeff < 0;
            std::string group;
            for (std::size_t k = i; k < j; ++k) {
                HomologyTerm t = r.terms[k];
                if (negated) t.coeff = -t.coeff;
                group += coefficient_term(t, k == i);
            }
            std::string lead = negated ? (out.empty() ? "-(" : " - (") : (out.empty() ? "(" : " + (");
            out += lead + group + ")" + suffix;
        }
        i = j;
    }
    if (out.empty()) out = "0";
    if (r.precision) out += " + O(t^{" + r.precision->get_str() + "})";
    return out;
}

} // namespace toricqh

#endif
