#ifndef TORICQH_RATIONAL_HPP
#define TORICQH_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace toricqh {

/// Exact rational, always canonical (reduced, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p", "p/q" (surrounding whitespace ignored). Decimals are rejected.
inline Rat parse_rat(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail(ErrorKind::Parse, "empty rational");
    std::size_t slash = s.find('/');
    auto valid_int = [](std::string_view v, bool allow_sign) {
        if (v.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (v[0] == '-' || v[0] == '+')) i = 1;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        fail(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
    if (!is_integer(r)) fail(ErrorKind::NonIntegralCoefficient, "expected an integer, got " + r.get_str());
    if (!r.get_num().fits_slong_p()) fail(ErrorKind::InvalidArgument, "integer out of range: " + r.get_str());
    return r.get_num().get_si();
}

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// Extended rational line used for valuations and precisions: nullopt is +infinity.
using ExtRat = std::optional<Rat>;

inline ExtRat ext_min(const ExtRat& a, const ExtRat& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

inline ExtRat ext_add(const ExtRat& a, const ExtRat& b) {
    if (!a || !b) return std::nullopt;
    return Rat(*a + *b);
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

} // namespace toricqh

#endif
