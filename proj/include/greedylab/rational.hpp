#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace greedylab {

// Arbitrary-precision integers and rationals. The rational backend keeps
// values in lowest terms with a positive denominator, so equality is plain
// structural equality and every comparison below is exact. GMP carries the
// limb work; envelope certificates push operands to thousands of bits, where
// its gcd is decisive.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Thrown when an input violates a documented precondition.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an enumeration would exceed its configured cap.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw validation_error("rational with zero denominator");
    return Rational(num, den);
}

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline int sign(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

inline Rational pow_rational(const Rational& x, unsigned e) {
    Rational r = 1, base = x;
    for (unsigned k = e; k != 0; k >>= 1) {
        if (k & 1u) r *= base;
        base *= base;
    }
    return r;
}

inline Int pow_int(const Int& x, unsigned e) {
    Int r = 1, base = x;
    for (unsigned k = e; k != 0; k >>= 1) {
        if (k & 1u) r *= base;
        base *= base;
    }
    return r;
}

/// Exact integer q-th root if it exists.
inline std::optional<Int> exact_root(const Int& x, unsigned q) {
    if (x < 0) return std::nullopt;
    if (x == 0 || x == 1 || q == 1) return x;
    Int lo = 0, hi = x;
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (pow_int(mid, q) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (pow_int(lo, q) == x) return lo;
    return std::nullopt;
}

/// Parses a decimal integer or "p/q". Whitespace is not accepted.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw validation_error("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) -> Int {
        if (part.empty() || part == "-") bad();
        std::size_t start = part[0] == '-' ? 1 : 0;
        if (start == part.size()) bad();
        for (std::size_t i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') bad();
        return Int(part);
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den <= 0) bad();
    return Rational(num, den);
}

/// Lowest-terms text form: "p" when the denominator is 1, else "p/q".
inline std::string format_rational(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

}  // namespace greedylab
