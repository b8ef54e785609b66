#ifndef TORICQH_EXPR_HPP
#define TORICQH_EXPR_HPP

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "novikov.hpp"

namespace toricqh {

/// num / den with den an exactly known Novikov unit; the form in which Y-table entries are kept.
struct Fraction {
    QPoly num;
    NovScalar den = nov_one();

    static Fraction of(QPoly p) { return Fraction{std::move(p), nov_one()}; }

    bool x_free() const {
        for (auto& [k, p] : num.terms())
            for (auto& [m, c] : p.terms())
                if (total_degree(m) != 0) return false;
        return true;
    }

    NovScalar scalar_part() const {
        NovScalar s;
        for (auto& [k, p] : num.terms())
            for (auto& [m, c] : p.terms()) s.add_term(k, c);
        return s;
    }

    /// Folds a monomial denominator into the numerator.
    void simplify() {
        if (den.terms().size() != 1) return;
        auto [k, c] = *den.terms().begin();
        num = num.shifted(-k.d, -k.kappa).scaled(1 / c);
        den = nov_one();
    }

    bool trivial_denominator() const {
        if (den.terms().size() != 1) return false;
        const auto& [k, c] = *den.terms().begin();
        return k.kappa == 0 && k.d == 0 && c == 1;
    }

    /// Expansion truncated at the cutoff; every term of kappa <= cutoff is exact.
    QPoly expand(const Rat& cutoff) const {
        QPoly out(cutoff);
        if (num.is_zero()) return out;
        if (trivial_denominator()) {
            out += num;
            return out;
        }
        const Rat lead = den.terms().begin()->first.kappa;
        Rat level = std::max({Rat(cutoff - num.valuation() + lead), Rat(cutoff + lead), den.terms().rbegin()->first.kappa, cutoff});
        NovScalar d = den;
        d.set_cutoff(level);
        QPoly n = num;
        n.set_cutoff(level);
        QPoly full = series_mul(n, nov_invert(d));
        full.set_cutoff(cutoff);
        return full;
    }
};

inline Fraction operator+(const Fraction& a, const Fraction& b) {
    Fraction out{a.num * b.den + b.num * a.den, a.den * b.den};
    out.simplify();
    return out;
}

inline Fraction operator-(const Fraction& a) { return Fraction{a.num.scaled(-1), a.den}; }
inline Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }

inline Fraction operator*(const Fraction& a, const Fraction& b) {
    Fraction out{a.num * b.num, a.den * b.den};
    out.simplify();
    return out;
}

inline Fraction divide(const Fraction& a, const Fraction& b) {
    if (!b.x_free()) fail(ErrorKind::Parse, "division by an expression involving x variables");
    NovScalar s = b.scalar_part();
    if (s.is_zero()) fail(ErrorKind::ZeroElement, "division by zero");
    auto lead = s.terms().begin();
    if (std::next(lead) != s.terms().end() && std::next(lead)->first.kappa == lead->first.kappa)
        fail(ErrorKind::NotAUnit, "divisor has several terms of minimal valuation");
    Fraction out{a.num * b.den, a.den * s};
    out.simplify();
    return out;
}

/// Recursive-descent parser for expressions over x1..xN, q, t and named symbols.
class ExprParser {
public:
    using Lookup = std::function<std::optional<Fraction>(const std::string&)>;

    ExprParser(std::string_view text, int nvars, Lookup lookup = {})
        : text_(text), nvars_(nvars), lookup_(std::move(lookup)) {}

    Fraction parse() {
        Fraction v = expr();
        skip();
        if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Parse, what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    bool starts_factor() {
        skip();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    Fraction constant(const Rat& c) { return Fraction::of(QPoly::monomial(PolyQ(nvars_, c), 0, 0)); }

    Fraction expr() {
        Fraction v = term();
        while (true) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    Fraction term() {
        Fraction v = unary();
        while (true) {
            if (accept('*'))
                v = v * unary();
            else if (accept('/'))
                v = divide(v, unary());
            else if (starts_factor())
                v = v * unary();
            else
                return v;
        }
    }

    Fraction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Fraction power() {
        skip();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == 't' &&
            (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            Rat e = 1;
            if (accept('^')) e = rational_exponent();
            return Fraction::of(QPoly::monomial(PolyQ(nvars_, Rat(1)), 0, e));
        }
        pos_ = start;
        Fraction base = atom();
        if (!accept('^')) return base;
        long e = to_long(rational_exponent());
        if (e >= 0) {
            Fraction out = constant(1);
            for (long k = 0; k < e; ++k) out = out * base;
            return out;
        }
        if (!base.x_free()) error("negative power of an expression involving x variables");
        Fraction out = constant(1);
        for (long k = 0; k < -e; ++k) out = divide(out, base);
        return out;
    }

    Rat rational_exponent() {
        skip();
        char close = 0;
        if (accept('{'))
            close = '}';
        else if (accept('('))
            close = ')';
        skip();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (close && pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        std::string lit(text_.substr(start, pos_ - start));
        if (lit.empty() || lit == "-" || lit == "+") error("expected an exponent");
        Rat e = parse_rat(lit);
        if (close && !accept(close)) error(std::string("expected '") + close + "'");
        return e;
    }

    Fraction atom() {
        skip();
        if (pos_ >= text_.size()) error("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Fraction v = expr();
            if (!accept(')')) error("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return constant(parse_rat(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "q") return Fraction::of(QPoly::monomial(PolyQ(nvars_, Rat(1)), 1, 0));
            if (name.size() > 1 && name[0] == 'x' &&
                std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                int i = std::stoi(name.substr(1));
                if (i < 1 || i > nvars_) error("variable " + name + " out of range");
                return Fraction::of(QPoly::monomial(PolyQ::variable(nvars_, i - 1), 0, 0));
            }
            if (lookup_) {
                if (auto v = lookup_(name)) return *v;
            }
            pos_ = start;
            error("unknown symbol '" + name + "'");
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int nvars_;
    Lookup lookup_;
};

inline Fraction parse_expression(std::string_view text, int nvars, ExprParser::Lookup lookup = {}) {
    return ExprParser(text, nvars, std::move(lookup)).parse();
}

} // namespace toricqh

#endif
