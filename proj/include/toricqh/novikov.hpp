#ifndef TORICQH_NOVIKOV_HPP
#define TORICQH_NOVIKOV_HPP

#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace toricqh {

/// Exponent pair of q^d t^kappa, ordered by (kappa, d).
struct NovKey {
    Rat kappa;
    long d = 0;

    friend bool operator<(const NovKey& a, const NovKey& b) {
        if (a.kappa != b.kappa) return a.kappa < b.kappa;
        return a.d < b.d;
    }
    friend bool operator==(const NovKey& a, const NovKey& b) { return a.kappa == b.kappa && a.d == b.d; }
};

/// Finite sum  sum c_{d,kappa} q^d t^kappa  with coefficients in C (Rat or PolyQ).
///
/// cutoff: terms with kappa above it are never stored (nullopt: no truncation).
/// precision: the stored terms are exact for kappa <= precision, and nothing above
/// precision is stored (nullopt: exact).
template <class C>
class Series {
public:
    using Terms = std::map<NovKey, C>;

    Series() = default;
    explicit Series(std::optional<Rat> cutoff) : cutoff_(std::move(cutoff)) {}

    static Series monomial(C c, long d, const Rat& kappa, std::optional<Rat> cutoff = std::nullopt) {
        Series s(std::move(cutoff));
        s.add_term({kappa, d}, std::move(c));
        return s;
    }

    const Terms& terms() const { return terms_; }
    const std::optional<Rat>& cutoff() const { return cutoff_; }
    const std::optional<Rat>& precision() const { return precision_; }
    bool truncated() const { return precision_.has_value(); }
    bool is_zero() const { return terms_.empty(); }

    /// Minimum kappa among stored terms.
    Rat valuation() const {
        if (terms_.empty()) fail(ErrorKind::ZeroElement, "valuation of zero");
        return terms_.begin()->first.kappa;
    }

    /// Lower bound for the valuation of the true element (stored terms, else precision, else +inf).
    ExtRat lower_bound() const {
        if (!terms_.empty()) return terms_.begin()->first.kappa;
        return precision_;
    }

    void add_term(const NovKey& k, C c) {
        if (toricqh::is_zero(c)) return;
        if (above_limit(k.kappa)) {
            if (cutoff_ && k.kappa > *cutoff_) note_dropped();
            return;
        }
        auto [it, inserted] = terms_.try_emplace(k, std::move(c));
        if (!inserted) {
            it->second += c;
            if (toricqh::is_zero(it->second)) terms_.erase(it);
        }
    }

    void set_cutoff(std::optional<Rat> cutoff) {
        cutoff_ = std::move(cutoff);
        if (cutoff_) {
            bool dropped = false;
            for (auto it = terms_.begin(); it != terms_.end();) {
                if (it->first.kappa > *cutoff_) {
                    it = terms_.erase(it);
                    dropped = true;
                } else {
                    ++it;
                }
            }
            if (dropped) note_dropped();
            if (precision_ && *precision_ > *cutoff_) precision_ = cutoff_;
        }
    }

    /// Lowers the precision (never raises it) and discards terms above it.
    void limit_precision(const ExtRat& p) {
        if (!p) return;
        if (!precision_ || *p < *precision_) precision_ = p;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.kappa > *precision_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    Series shifted(long d, const Rat& kappa) const {
        Series out(cutoff_);
        out.precision_ = precision_ ? std::optional<Rat>(*precision_ + kappa) : std::nullopt;
        if (out.precision_ && cutoff_ && *out.precision_ > *cutoff_) out.precision_ = cutoff_;
        for (auto& [k, c] : terms_) out.add_term({k.kappa + kappa, k.d + d}, c);
        return out;
    }

    Series& operator+=(const Series& o) {
        merge_cutoff(o);
        limit_precision(o.precision_);
        for (auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    Series& operator-=(const Series& o) {
        merge_cutoff(o);
        limit_precision(o.precision_);
        for (auto& [k, c] : o.terms_) add_term(k, C(c * Rat(-1)));
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(const Series& a) { return Series(a.cutoff_) - a; }

    Series scaled(const Rat& s) const {
        Series out(cutoff_);
        out.precision_ = precision_;
        if (s == 0) return out;
        for (auto& [k, c] : terms_) out.terms_.emplace(k, C(c * s));
        return out;
    }

    template <class D>
    auto map_coefficients(D f) const {
        using R = decltype(f(std::declval<const C&>()));
        Series<R> out(cutoff_);
        out.force_precision(precision_);
        for (auto& [k, c] : terms_) out.add_term(k, f(c));
        return out;
    }

    void force_precision(std::optional<Rat> p) { precision_ = std::move(p); }

    friend bool operator==(const Series& a, const Series& b) {
        return a.terms_ == b.terms_ && a.precision_ == b.precision_;
    }

    void merge_cutoff(const Series& o) { merge_cutoff_value(o.cutoff_); }

    void merge_cutoff_value(const std::optional<Rat>& other) {
        if (!other) return;
        if (!cutoff_) {
            set_cutoff(other);
            return;
        }
        if (*cutoff_ != *other)
            fail(ErrorKind::CutoffMismatch, "cutoffs " + cutoff_->get_str() + " and " + other->get_str());
    }

private:
    bool above_limit(const Rat& kappa) const {
        return (cutoff_ && kappa > *cutoff_) || (precision_ && kappa > *precision_);
    }

    void note_dropped() {
        if (!precision_ || *precision_ > *cutoff_) precision_ = cutoff_;
    }

    Terms terms_;
    std::optional<Rat> cutoff_;
    std::optional<Rat> precision_;
};

using NovScalar = Series<Rat>;
/// Polynomial with Novikov coefficients, stored level by level: (kappa, d) -> PolyQ.
using QPoly = Series<PolyQ>;

inline std::optional<Rat> merged_cutoff(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    if (*a != *b) fail(ErrorKind::CutoffMismatch, "cutoffs " + a->get_str() + " and " + b->get_str());
    return a;
}

/// Precision of a product given both factors.
template <class A, class B>
ExtRat product_precision(const Series<A>& a, const Series<B>& b) {
    ExtRat pa = a.precision(), pb = b.precision();
    ExtRat la = a.lower_bound(), lb = b.lower_bound();
    // a missing lower bound means that factor is exactly zero
    ExtRat p1 = pa ? ext_add(pa, lb) : std::nullopt;
    ExtRat p2 = pb ? ext_add(pb, la) : std::nullopt;
    return ext_min(p1, p2);
}

template <class A, class B>
auto series_mul(const Series<A>& a, const Series<B>& b) {
    using R = std::conditional_t<std::is_same_v<A, Rat> && std::is_same_v<B, Rat>, Rat, PolyQ>;
    Series<R> out(merged_cutoff(a.cutoff(), b.cutoff()));
    out.limit_precision(product_precision(a, b));
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) out.add_term({ka.kappa + kb.kappa, ka.d + kb.d}, R(ca * cb));
    return out;
}

inline NovScalar operator*(const NovScalar& a, const NovScalar& b) { return series_mul(a, b); }
inline QPoly operator*(const QPoly& a, const QPoly& b) { return series_mul(a, b); }
inline QPoly operator*(const QPoly& a, const NovScalar& b) { return series_mul(a, b); }
inline QPoly operator*(const NovScalar& a, const QPoly& b) { return series_mul(a, b); }

inline NovScalar nov_add(const NovScalar& a, const NovScalar& b) { return a + b; }
inline NovScalar nov_mul(const NovScalar& a, const NovScalar& b) { return a * b; }
inline Rat valuation(const NovScalar& a) { return a.valuation(); }

inline NovScalar nov_one(std::optional<Rat> cutoff = std::nullopt) { return NovScalar::monomial(Rat(1), 0, 0, std::move(cutoff)); }

inline NovScalar nov_monomial(const Rat& c, long d, const Rat& kappa, std::optional<Rat> cutoff = std::nullopt) {
    return NovScalar::monomial(c, d, kappa, std::move(cutoff));
}

/// Inverse of a scalar with a unique lowest term, expanded as a geometric series up to the cutoff.
inline NovScalar nov_invert(const NovScalar& a) {
    if (a.is_zero()) fail(ErrorKind::ZeroElement, "inverse of zero");
    auto it = a.terms().begin();
    const NovKey lead = it->first;
    const Rat lead_c = it->second;
    if (std::next(it) != a.terms().end() && std::next(it)->first.kappa == lead.kappa)
        fail(ErrorKind::NotAUnit, "several terms of minimal valuation");
    NovScalar leading_inv = NovScalar::monomial(Rat(1 / lead_c), -lead.d, -lead.kappa);
    if (a.terms().size() == 1 && !a.truncated()) {
        leading_inv.set_cutoff(a.cutoff());
        return leading_inv;
    }
    if (!a.cutoff()) fail(ErrorKind::InvalidArgument, "inverting a non-monomial needs a cutoff");
    const Rat cutoff = *a.cutoff();
    // a = lead * (1 + r), v(r) > 0
    NovScalar r;
    for (auto jt = std::next(a.terms().begin()); jt != a.terms().end(); ++jt)
        r.add_term({jt->first.kappa - lead.kappa, jt->first.d - lead.d}, Rat(jt->second / lead_c));
    // terms of 1/(1+r) are needed up to cutoff + lead.kappa
    const Rat level = cutoff + lead.kappa;
    NovScalar sum(level);
    sum.add_term({0, 0}, Rat(1));
    NovScalar power = nov_one(level);
    NovScalar neg_r = r.scaled(-1);
    neg_r.set_cutoff(level);
    while (!power.is_zero()) {
        power = power * neg_r;
        sum += power;
    }
    sum.set_cutoff(std::nullopt);
    sum.force_precision(std::nullopt);
    NovScalar out = sum.shifted(-lead.d, -lead.kappa).scaled(Rat(1 / lead_c));
    out.set_cutoff(cutoff);
    // 1/(1+r) was computed exactly through level; the result is exact through cutoff
    out.force_precision(cutoff);
    if (a.precision()) out.limit_precision(Rat(*a.precision() - 2 * lead.kappa));
    return out;
}

inline std::string nov_monomial_string(long d, const Rat& kappa) {
    std::string out;
    if (d != 0) out += d == 1 ? "q" : "q^" + (d < 0 ? "{" + std::to_string(d) + "}" : std::to_string(d));
    if (kappa != 0) {
        if (!out.empty()) out += " ";
        if (kappa == 1)
            out += "t";
        else if (is_integer(kappa) && kappa > 0)
            out += "t^" + kappa.get_str();
        else
            out += "t^{" + kappa.get_str() + "}";
    }
    return out;
}

inline std::string to_string(const NovScalar& a) {
    if (a.is_zero()) return a.truncated() ? "O(t^{" + a.precision()->get_str() + "})" : "0";
    std::string out;
    for (auto& [k, c] : a.terms()) {
        std::string mono = nov_monomial_string(k.d, k.kappa);
        std::string mag = abs(c) == 1 && !mono.empty() ? "" : abs(c).get_str();
        std::string term = mag + (mag.empty() || mono.empty() ? "" : " ") + mono;
        if (out.empty())
            out += (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    if (a.truncated()) out += " + O(t^{" + a.precision()->get_str() + "})";
    return out;
}

/// Terms ordered by monomial (largest first), then by valuation.
inline std::string to_string(const QPoly& a) {
    if (a.is_zero()) return a.truncated() ? "O(t^{" + a.precision()->get_str() + "})" : "0";
    std::map<Monomial, std::vector<std::pair<NovKey, Rat>>, GrevlexLess> by_mono;
    for (auto& [k, p] : a.terms())
        for (auto& [m, c] : p.terms()) by_mono[m].emplace_back(k, c);
    std::string out;
    for (auto it = by_mono.rbegin(); it != by_mono.rend(); ++it) {
        std::string mono = total_degree(it->first) ? mono_to_string(it->first) : "";
        for (auto& [k, c] : it->second) {
            std::string nov = nov_monomial_string(k.d, k.kappa);
            std::string rest = mono + (!mono.empty() && !nov.empty() ? " " : "") + nov;
            std::string mag = abs(c) == 1 && !rest.empty() ? "" : abs(c).get_str();
            std::string term = mag + (mag.empty() || rest.empty() ? "" : " ") + rest;
            if (out.empty())
                out += (c < 0 ? "-" : "") + term;
            else
                out += (c < 0 ? " - " : " + ") + term;
        }
    }
    if (a.truncated()) out += " + O(t^{" + a.precision()->get_str() + "})";
    return out;
}

} // namespace toricqh

#endif
