#ifndef TORICQH_POLYNOMIAL_HPP
#define TORICQH_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace toricqh {

/// Exponent vector over x_1..x_N.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

/// Graded reverse lexicographic order with x_1 > x_2 > ... > x_N.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

inline bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

inline std::string mono_to_string(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

/// Polynomial in x_1..x_N over Q. Terms are kept in grevlex order; no zero coefficients.
class PolyQ {
public:
    using Terms = std::map<Monomial, Rat, GrevlexLess>;

    PolyQ() = default;
    explicit PolyQ(int nvars) : nvars_(nvars) {}
    PolyQ(int nvars, const Rat& c) : nvars_(nvars) {
        if (c != 0) terms_[Monomial(static_cast<std::size_t>(nvars), 0)] = c;
    }

    static PolyQ monomial(const Monomial& m, const Rat& c = 1) {
        PolyQ p(static_cast<int>(m.size()));
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    static PolyQ variable(int nvars, int i) {
        Monomial m(static_cast<std::size_t>(nvars), 0);
        m[static_cast<std::size_t>(i)] = 1;
        return monomial(m);
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rat& leading_coefficient() const { return terms_.rbegin()->second; }

    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        if (nvars_ == 0) nvars_ = static_cast<int>(m.size());
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Total degree if homogeneous, -1 for zero, -2 for inhomogeneous.
    int homogeneous_degree() const {
        if (terms_.empty()) return -1;
        int d = total_degree(terms_.begin()->first);
        for (auto& [m, c] : terms_)
            if (total_degree(m) != d) return -2;
        return d;
    }

    PolyQ& operator+=(const PolyQ& o) {
        if (nvars_ == 0) nvars_ = o.nvars_;
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PolyQ& operator-=(const PolyQ& o) {
        if (nvars_ == 0) nvars_ = o.nvars_;
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    PolyQ& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator-(PolyQ a) { return a *= Rat(-1); }
    friend PolyQ operator*(PolyQ a, const Rat& s) { return a *= s; }
    friend PolyQ operator*(const Rat& s, PolyQ a) { return a *= s; }

    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        PolyQ out(std::max(a.nvars_, b.nvars_));
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
        return out;
    }

    PolyQ times_monomial(const Monomial& m, const Rat& c) const {
        PolyQ out(nvars_);
        if (c == 0) return out;
        for (auto& [mm, cc] : terms_) out.terms_.emplace(mono_mul(mm, m), cc * c);
        return out;
    }

    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rat& c = it->second;
            bool unit = it->first == Monomial(it->first.size(), 0);
            std::string mag = abs(c) == 1 && !unit ? "" : abs(c).get_str() + (unit ? "" : "*");
            if (out.empty())
                out += (c < 0 ? "-" : "") + mag;
            else
                out += (c < 0 ? " - " : " + ") + mag;
            if (!unit) out += mono_to_string(it->first);
        }
        return out;
    }

private:
    int nvars_ = 0;
    Terms terms_;
};

inline bool is_zero(const Rat& r) { return r == 0; }
inline bool is_zero(const PolyQ& p) { return p.is_zero(); }

/// Substitutes x_i -> images[i] in f.
inline PolyQ substitute(const PolyQ& f, const std::vector<PolyQ>& images, int target_vars) {
    PolyQ out(target_vars);
    std::map<std::pair<int, int>, PolyQ> powers;
    auto power = [&](int i, int e) -> const PolyQ& {
        auto key = std::make_pair(i, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        PolyQ p(target_vars, Rat(1));
        for (int k = 0; k < e; ++k) p = p * images[static_cast<std::size_t>(i)];
        return powers.emplace(key, std::move(p)).first->second;
    };
    for (auto& [m, c] : f.terms()) {
        PolyQ term(target_vars, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term = term * power(static_cast<int>(i), m[i]);
        out += term;
    }
    return out;
}

} // namespace toricqh

#endif
