#ifndef TORICQH_GROEBNER_HPP
#define TORICQH_GROEBNER_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace toricqh {

/// Expression  sum_g cofactor_g * generator_g  over the original generators.
using Cofactors = std::map<int, PolyQ>;

inline void add_scaled(Cofactors& acc, const Cofactors& c, const Monomial& m, const Rat& coeff) {
    for (auto& [g, p] : c) {
        auto& slot = acc[g];
        slot += p.times_monomial(m, coeff);
        if (slot.is_zero()) acc.erase(g);
    }
}

struct GBElement {
    PolyQ poly;
    Cofactors cofactors;
};

/// Result of dividing f by the basis: f = sum quotients[k] * basis[k] + remainder.
struct Division {
    PolyQ remainder;
    std::map<std::size_t, PolyQ> quotients;
};

/// Reduced Groebner basis (grevlex) of an ideal, each element expressed in the original generators.
class GroebnerBasis {
public:
    GroebnerBasis() = default;

    GroebnerBasis(int nvars, std::vector<PolyQ> generators) : nvars_(nvars), generators_(std::move(generators)) {
        compute();
    }

    int nvars() const { return nvars_; }
    const std::vector<PolyQ>& generators() const { return generators_; }
    const std::vector<GBElement>& elements() const { return elements_; }

    Division divide(const PolyQ& f) const { return divide_by(f, elements_); }

    PolyQ normal_form(const PolyQ& f) const { return divide(f).remainder; }

    /// f - nf(f) expressed in the original generators.
    Cofactors trace(const Division& div) const {
        Cofactors out;
        for (auto& [k, q] : div.quotients)
            for (auto& [g, c] : elements_[k].cofactors) {
                auto& slot = out[g];
                slot += q * c;
                if (slot.is_zero()) out.erase(g);
            }
        return out;
    }

    bool is_standard(const Monomial& m) const {
        for (auto& e : elements_)
            if (divides(e.poly.leading_monomial(), m)) return false;
        return true;
    }

    /// All standard monomials, grouped by total degree (finite for zero-dimensional quotients).
    std::vector<std::vector<Monomial>> standard_monomials_by_degree() const {
        std::vector<std::vector<Monomial>> out;
        std::vector<Monomial> current{Monomial(static_cast<std::size_t>(nvars_), 0)};
        if (!is_standard(current[0])) return out;
        while (!current.empty()) {
            std::sort(current.begin(), current.end(), GrevlexLess{});
            out.push_back(current);
            std::vector<Monomial> next;
            for (auto& m : current)
                for (int i = 0; i < nvars_; ++i) {
                    Monomial mm = m;
                    ++mm[static_cast<std::size_t>(i)];
                    if (is_standard(mm) && std::find(next.begin(), next.end(), mm) == next.end()) next.push_back(mm);
                }
            current = std::move(next);
            if (out.size() > 64) break; // not zero-dimensional
        }
        return out;
    }

private:
    static Division divide_by(const PolyQ& f, const std::vector<GBElement>& basis) {
        Division div;
        div.remainder = PolyQ(f.nvars());
        PolyQ p = f;
        while (!p.is_zero()) {
            Monomial lm = p.leading_monomial();
            Rat lc = p.leading_coefficient();
            bool reduced = false;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const PolyQ& g = basis[k].poly;
                if (!divides(g.leading_monomial(), lm)) continue;
                Monomial shift = mono_div(lm, g.leading_monomial());
                Rat c = lc / g.leading_coefficient();
                p -= g.times_monomial(shift, c);
                div.quotients[k].add_term(shift, c);
                reduced = true;
                break;
            }
            if (!reduced) {
                div.remainder.add_term(lm, lc);
                p.add_term(lm, -lc);
            }
        }
        for (auto it = div.quotients.begin(); it != div.quotients.end();)
            it = it->second.is_zero() ? div.quotients.erase(it) : std::next(it);
        return div;
    }

    // Remainder of f modulo basis, with cofactors of the remainder given cofactors of f.
    static GBElement reduce_tracked(const PolyQ& f, const Cofactors& cf, const std::vector<GBElement>& basis) {
        Division div = divide_by(f, basis);
        GBElement out{div.remainder, cf};
        for (auto& [k, q] : div.quotients)
            for (auto& [m, c] : q.terms()) add_scaled(out.cofactors, basis[k].cofactors, m, -c);
        return out;
    }

    static void make_monic(GBElement& e) {
        Rat inv = 1 / e.poly.leading_coefficient();
        e.poly *= inv;
        for (auto& [g, p] : e.cofactors) p *= inv;
    }

    void compute() {
        std::vector<GBElement> basis;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            if (generators_[g].is_zero()) continue;
            Cofactors cf;
            cf[static_cast<int>(g)] = PolyQ(nvars_, Rat(1));
            GBElement e = reduce_tracked(generators_[g], cf, basis);
            if (e.poly.is_zero()) continue;
            make_monic(e);
            basis.push_back(std::move(e));
        }
        std::deque<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
        while (!pairs.empty()) {
            auto [i, j] = pairs.front();
            pairs.pop_front();
            const Monomial& li = basis[i].poly.leading_monomial();
            const Monomial& lj = basis[j].poly.leading_monomial();
            Monomial l = mono_lcm(li, lj);
            if (l == mono_mul(li, lj)) continue; // coprime leading terms
            Monomial si = mono_div(l, li), sj = mono_div(l, lj);
            PolyQ s = basis[i].poly.times_monomial(si, 1) - basis[j].poly.times_monomial(sj, 1);
            Cofactors cf;
            add_scaled(cf, basis[i].cofactors, si, 1);
            add_scaled(cf, basis[j].cofactors, sj, -1);
            GBElement e = reduce_tracked(s, cf, basis);
            if (e.poly.is_zero()) continue;
            make_monic(e);
            basis.push_back(std::move(e));
            for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
        }
        // minimal basis
        std::vector<GBElement> minimal;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
                if (i == j) continue;
                const Monomial& li = basis[i].poly.leading_monomial();
                const Monomial& lj = basis[j].poly.leading_monomial();
                if (divides(lj, li) && (li != lj || j < i)) redundant = true;
            }
            if (!redundant) minimal.push_back(basis[i]);
        }
        // interreduce tails
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<GBElement> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            PolyQ lead = PolyQ::monomial(minimal[i].poly.leading_monomial(), minimal[i].poly.leading_coefficient());
            PolyQ tail = minimal[i].poly - lead;
            GBElement reduced = reduce_tracked(tail, minimal[i].cofactors, others);
            // reduce_tracked treated cofactors as those of the tail; add back the lead term
            reduced.poly += lead;
            minimal[i] = std::move(reduced);
        }
        std::sort(minimal.begin(), minimal.end(), [](const GBElement& a, const GBElement& b) {
            return GrevlexLess{}(a.poly.leading_monomial(), b.poly.leading_monomial());
        });
        elements_ = std::move(minimal);
    }

    int nvars_ = 0;
    std::vector<PolyQ> generators_;
    std::vector<GBElement> elements_;
};

} // namespace toricqh

#endif
