#ifndef TORICQH_QUANTUM_HPP
#define TORICQH_QUANTUM_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohomology.hpp"
#include "document.hpp"
#include "expr.hpp"

namespace toricqh {

/// Y_i for the facets that carry one; absent facets have Y_i = x_i.
using YTable = std::map<int, Fraction>;

/// Cohomological degree 2|m| + 2d shared by every term, or nullopt (zero or inhomogeneous).
inline std::optional<long> qdegree(const QPoly& a) {
    std::optional<long> deg;
    for (auto& [k, p] : a.terms())
        for (auto& [m, c] : p.terms()) {
            long dd = 2L * total_degree(m) + 2 * k.d;
            if (deg && *deg != dd) return std::nullopt;
            deg = dd;
        }
    return deg;
}

/// Small quantum cohomology as Q[x]/(P + SR_Y) over the Novikov ring.
/// Each Stanley-Reisner generator g_I is paired with its correction Delta_I, so that
/// g_I = Delta_I holds in the quantum ring.
class QuantumPresentation {
public:
    static QuantumPresentation fano(std::shared_ptr<const ClassicalRing> ring, std::optional<Rat> cutoff = std::nullopt) {
        return nef(std::move(ring), {}, cutoff, Mode::Fano);
    }

    static QuantumPresentation nef(std::shared_ptr<const ClassicalRing> ring, YTable ytable,
                                   std::optional<Rat> cutoff = std::nullopt, Mode mode = Mode::Nef) {
        QuantumPresentation qp;
        qp.ring_ = std::move(ring);
        qp.mode_ = mode;
        qp.ytable_ = std::make_shared<const YTable>(std::move(ytable));
        const int N = qp.ring_->nvars();
        Rat max_omega = 0;
        auto y = [&](int i) {
            auto it = qp.ytable_->find(i);
            if (it != qp.ytable_->end()) return it->second;
            return Fraction::of(QPoly::monomial(PolyQ::variable(N, i), 0, 0));
        };
        std::vector<Fraction> deltas;
        for (std::size_t idx = 0; idx < qp.ring_->primitive_sets().size(); ++idx) {
            const PrimitiveSet& ps = qp.ring_->primitive_sets()[idx];
            max_omega = std::max(max_omega, ps.beta.omega);
            Fraction lhs = Fraction::of(QPoly::monomial(PolyQ(N, Rat(1)), 0, 0));
            for (int i : members(ps.indices)) lhs = lhs * y(i);
            Fraction rhs = Fraction::of(QPoly::monomial(PolyQ(N, Rat(1)), ps.beta.c1, ps.beta.omega));
            for (auto& [j, c] : ps.complement)
                for (long k = 0; k < c; ++k) rhs = rhs * y(j);
            Fraction g = Fraction::of(QPoly::monomial(qp.ring_->sr_generators()[idx], 0, 0));
            deltas.push_back(g - lhs + rhs);
        }
        qp.cutoff_ = cutoff ? *cutoff : Rat(4 * max_omega);
        if (qp.cutoff_ <= 0) fail(ErrorKind::InvalidArgument, "cutoff must be positive");
        if (mode == Mode::Nef) qp.validate_ytable();
        qp.set_deltas(std::move(deltas));
        return qp;
    }

    /// Presentation with explicitly supplied corrections (used to build deliberately broken presentations).
    static QuantumPresentation from_corrections(std::shared_ptr<const ClassicalRing> ring, std::vector<Fraction> deltas,
                                                const Rat& cutoff, Mode mode = Mode::Fano) {
        QuantumPresentation qp;
        qp.ring_ = std::move(ring);
        qp.mode_ = mode;
        qp.ytable_ = std::make_shared<const YTable>();
        qp.cutoff_ = cutoff;
        qp.set_deltas(std::move(deltas));
        return qp;
    }

    /// Same presentation, truncated at a different cutoff.
    QuantumPresentation at_cutoff(const Rat& cutoff) const {
        QuantumPresentation qp = *this;
        qp.cutoff_ = cutoff;
        qp.cache_ = std::make_shared<Cache>();
        qp.compute_hbar();
        return qp;
    }

    const ClassicalRing& classical() const { return *ring_; }
    std::shared_ptr<const ClassicalRing> classical_ptr() const { return ring_; }
    const DelzantPolytope& polytope() const { return ring_->polytope(); }
    Mode mode() const { return mode_; }
    const Rat& cutoff() const { return cutoff_; }
    const Rat& hbar() const { return hbar_; }
    const YTable& ytable() const { return *ytable_; }
    int nvars() const { return ring_->nvars(); }
    std::size_t num_relations() const { return deltas_->size(); }

    /// Delta_I exact through the given level.
    QPoly correction(std::size_t idx, const Rat& level) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto& slot = cache_->expansions[idx];
        auto it = slot.find(level);
        if (it != slot.end()) return it->second;
        QPoly e = (*deltas_)[idx].expand(level);
        slot.emplace(level, e);
        return e;
    }

    QPoly correction(std::size_t idx) const { return correction(idx, cutoff_); }

    const Fraction& correction_fraction(std::size_t idx) const { return (*deltas_)[idx]; }

    /// g_I - Delta_I, the quantum relation that vanishes in the ring.
    QPoly relation(std::size_t idx) const { return lift(ring_->sr_generators()[idx]) - correction(idx); }

    bool has_y(int i) const { return ytable_->count(i) != 0; }

    QPoly y(int i) const {
        auto it = ytable_->find(i);
        if (it != ytable_->end()) return it->second.expand(cutoff_);
        return lift(ring_->variable(i));
    }

    QPoly zero() const { return QPoly(cutoff_); }
    QPoly one() const { return lift(ring_->one()); }
    QPoly lift(const PolyQ& p) const {
        QPoly out(cutoff_);
        out.add_term({0, 0}, p);
        return out;
    }
    QPoly x(int i) const { return lift(ring_->variable(i)); }

    QPoly scalar(const NovScalar& s) const {
        QPoly out(cutoff_);
        out.force_precision(s.precision());
        for (auto& [k, c] : s.terms()) out.add_term(k, PolyQ(nvars(), c));
        return out;
    }

    QPoly monomial(const PolyQ& p, long d, const Rat& kappa) const {
        QPoly out(cutoff_);
        out.add_term({kappa, d}, p);
        return out;
    }

    /// Representative on standard monomials, reducing valuation level by level.
    QPoly nf(const QPoly& z) const {
        QPoly in = z;
        in.merge_cutoff_value(cutoff_);
        std::map<NovKey, PolyQ> pending(in.terms().begin(), in.terms().end());
        QPoly out(cutoff_);
        out.force_precision(in.precision());
        while (!pending.empty()) {
            auto it = pending.begin();
            NovKey key = it->first;
            PolyQ poly = std::move(it->second);
            pending.erase(it);
            if (poly.is_zero()) continue;
            ClassicalTrace tr = ring_->traced(poly);
            out.add_term(key, tr.nf);
            for (auto& [idx, h] : tr.sr) {
                QPoly delta = correction(static_cast<std::size_t>(idx), cutoff_ - key.kappa);
                if (delta.precision()) out.limit_precision(Rat(*delta.precision() + key.kappa));
                for (auto& [k2, dp] : delta.terms()) {
                    NovKey nk{key.kappa + k2.kappa, key.d + k2.d};
                    if (nk.kappa > cutoff_) {
                        out.limit_precision(cutoff_);
                        continue;
                    }
                    auto [slot, inserted] = pending.try_emplace(nk, PolyQ(nvars()));
                    slot->second += h * dp;
                }
            }
        }
        return out;
    }

    QPoly mul(const QPoly& a, const QPoly& b) const {
        QPoly aa = a, bb = b;
        aa.merge_cutoff_value(cutoff_);
        bb.merge_cutoff_value(cutoff_);
        return nf(series_mul(aa, bb));
    }

    QPoly pow(const QPoly& a, long k) const {
        if (k < 0) return pow(inv(a), -k);
        QPoly out = one();
        for (long i = 0; i < k; ++i) out = mul(out, a);
        return out;
    }

    /// Multiplicative inverse, exact through the cutoff when the input allows it.
    QPoly inv(const QPoly& a) const;

    /// v(a*b - ab) for classical a, b; nullopt when the two agree.
    ExtRat classical_limit_defect(const PolyQ& a, const PolyQ& b) const {
        QPoly diff = mul(lift(a), lift(b)) - lift(ring_->normal_form(a * b));
        if (diff.is_zero()) return std::nullopt;
        return diff.valuation();
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::size_t, std::map<Rat, QPoly>> expansions;
    };

    QuantumPresentation() : cache_(std::make_shared<Cache>()) {}

    void set_deltas(std::vector<Fraction> deltas) {
        deltas_ = std::make_shared<const std::vector<Fraction>>(std::move(deltas));
        compute_hbar();
        for (std::size_t i = 0; i < deltas_->size(); ++i) {
            QPoly d = correction(i);
            if (!d.is_zero() && d.valuation() <= 0)
                fail(ErrorKind::BadCorrectionValuation,
                     "relation " + facet_set_name(ring_->primitive_sets()[i].indices) + " has a correction of valuation " +
                         d.valuation().get_str());
        }
    }

    void compute_hbar() {
        std::optional<Rat> h;
        for (std::size_t i = 0; i < deltas_->size(); ++i) {
            QPoly d = correction(i);
            if (d.is_zero()) continue;
            if (!h || d.valuation() < *h) h = d.valuation();
        }
        hbar_ = h ? *h : cutoff_;
    }

    void validate_ytable() const {
        for (auto& [i, frac] : *ytable_) {
            if (i < 0 || i >= nvars()) fail(ErrorKind::InvalidArgument, "Y-table entry for a missing facet");
            QPoly corr = frac.expand(cutoff_) - x(i);
            for (auto& [k, p] : corr.terms()) {
                if (k.kappa <= 0)
                    fail(ErrorKind::BadCorrectionValuation,
                         "Y" + std::to_string(i + 1) + " has a correction term of valuation " + k.kappa.get_str());
                for (auto& [m, c] : p.terms())
                    if (2L * total_degree(m) + 2 * k.d != 2)
                        fail(ErrorKind::BadCorrectionDegree, "Y" + std::to_string(i + 1) + " has a correction term of degree " +
                                                                 std::to_string(2L * total_degree(m) + 2 * k.d));
            }
        }
    }

    std::shared_ptr<const ClassicalRing> ring_;
    Mode mode_ = Mode::Fano;
    std::shared_ptr<const YTable> ytable_;
    std::shared_ptr<const std::vector<Fraction>> deltas_;
    Rat cutoff_;
    Rat hbar_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

// Determinant by dynamic programming over column subsets (no divisions).
inline NovScalar series_det(const std::vector<std::vector<NovScalar>>& m, const Rat& cutoff) {
    const std::size_t r = m.size();
    std::vector<NovScalar> f(std::size_t{1} << r, NovScalar(cutoff));
    f[0] = nov_one(cutoff);
    for (std::size_t mask = 0; mask < f.size(); ++mask) {
        if (f[mask].is_zero() && !f[mask].truncated()) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row == r) continue;
        for (std::size_t c = 0; c < r; ++c) {
            if (mask & (std::size_t{1} << c)) continue;
            int above = std::popcount(mask >> (c + 1));
            NovScalar term = f[mask] * m[row][c];
            f[mask | (std::size_t{1} << c)] += above % 2 ? term.scaled(-1) : term;
        }
    }
    return f.back();
}

} // namespace detail

inline QPoly QuantumPresentation::inv(const QPoly& a_in) const {
    QPoly a = nf(a_in);
    if (a.is_zero()) fail(ErrorKind::NotAUnit, "zero has no inverse");
    auto deg = qdegree(a);
    if (!deg) fail(ErrorKind::WrongDegree, "inverse needs a homogeneous element");
    const auto& basis = ring_->basis();
    const std::size_t r = basis.size();
    const Rat v = a.valuation();
    const Rat step = std::max(Rat(1), cutoff_);
    std::optional<QPoly> best;
    Rat working = cutoff_;
    for (int attempt = 0; attempt < 8; ++attempt, working += step) {
        QuantumPresentation wp = at_cutoff(working);
        QPoly aw = a;
        aw.set_cutoff(working);
        aw = aw.shifted(0, -v);
        // setting q = 1 makes the multiplication operator a matrix over the t-series
        std::vector<std::vector<NovScalar>> mat(r, std::vector<NovScalar>(r, NovScalar(working)));
        for (std::size_t j = 0; j < r; ++j) {
            QPoly col = wp.nf(series_mul(aw, wp.lift(PolyQ::monomial(basis[j]))));
            for (std::size_t i = 0; i < r; ++i) mat[i][j].limit_precision(col.precision());
            for (auto& [k, p] : col.terms())
                for (auto& [m, c] : p.terms()) {
                    auto i = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), m) - basis.begin());
                    mat[i][j].add_term({k.kappa, 0}, c);
                }
        }
        NovScalar det = detail::series_det(mat, working);
        if (det.is_zero()) {
            if (!det.truncated()) fail(ErrorKind::NotAUnit, "multiplication operator is singular");
            continue;
        }
        NovScalar det_inv = nov_invert(det);
        QPoly out(cutoff_);
        bool exact = true;
        ExtRat precision;
        for (std::size_t j = 0; j < r; ++j) {
            auto mj = mat;
            for (std::size_t i = 0; i < r; ++i) mj[i][j] = i == 0 ? nov_one(working) : NovScalar(working);
            NovScalar uj = (detail::series_det(mj, working) * det_inv).shifted(0, -v);
            if (uj.precision()) {
                exact = false;
                precision = precision ? ext_min(precision, uj.precision()) : uj.precision();
            }
            long d = (-*deg - 2L * total_degree(basis[j])) / 2;
            for (auto& [k, c] : uj.terms()) {
                if (k.kappa > cutoff_)
                    exact = false;
                else
                    out.add_term({k.kappa, d}, PolyQ::monomial(basis[j], c));
            }
        }
        if (exact) return out;
        if (!precision || *precision >= cutoff_) {
            out.force_precision(cutoff_);
            return out;
        }
        out.limit_precision(precision);
        if (!best || *out.precision() > *best->precision()) best = out;
    }
    if (!best) fail(ErrorKind::NotAUnit, "determinant vanishes to the working precision");
    return *best;
}

/// Presentation described by a polytope document: Fano from the polytope alone, NEF with its Y-table.
inline QuantumPresentation quantum_presentation(const PolytopeDocument& doc, std::optional<Rat> cutoff = std::nullopt) {
    auto ring = std::make_shared<const ClassicalRing>(doc.polytope());
    if (doc.mode == Mode::Fano && doc.y_table.empty()) return QuantumPresentation::fano(ring, cutoff);
    YTable table;
    for (auto& [i, text] : doc.y_table) {
        if (i < 0 || i >= ring->nvars()) fail(ErrorKind::InvalidArgument, "Y-table entry for a missing facet");
        table.emplace(i, parse_expression(text, ring->nvars()));
    }
    return QuantumPresentation::nef(ring, std::move(table), cutoff, doc.mode);
}

} // namespace toricqh

#endif
