#pragma once

#include "rational.hpp"

#include <cmath>
#include <string>

namespace greedylab {

/**
 * Exact carrier for norm values that may be irrational q-th roots.
 *
 * A value is either Exact(v) or QthPower(p, q) standing for p^(1/q) with
 * q >= 2; the q-th power p is stored exactly. Construction reduces perfect
 * roots to Exact, so QthPower values are genuinely irrational whenever the
 * underlying scalar is. Comparisons cross-power, which keeps them exact:
 * both sides of a comparison are raised to the lcm-free product of the two
 * exponents (x -> x^(q q') is monotone on the nonnegative reals).
 */
class NormValue {
  public:
    NormValue() = default;

    static NormValue exact(Rational v) {
        NormValue n;
        n.value_ = std::move(v);
        return n;
    }

    static NormValue qth_power(Rational p, unsigned q) {
        if (p < 0) throw validation_error("norm power must be nonnegative");
        if (q == 0) throw validation_error("power exponent must be >= 1");
        if (q == 1) return exact(std::move(p));
        auto rn = exact_root(numerator(p), q);
        auto rd = rn ? exact_root(denominator(p), q) : std::nullopt;
        if (rn && rd) return exact(Rational(*rn, *rd));
        NormValue n;
        n.value_ = std::move(p);
        n.q_ = q;
        return n;
    }

    bool is_exact() const { return q_ == 1; }
    const Rational& exact_value() const {
        if (!is_exact()) throw validation_error("norm value is an irrational root");
        return value_;
    }
    const Rational& power() const { return value_; }
    unsigned exponent() const { return q_; }

    /// The represented real, raised to the q-th power (exact).
    Rational raised(unsigned q) const {
        if (is_exact()) return pow_rational(value_, q);
        if (q % q_ != 0)
            throw validation_error("incompatible exponents for exact raising");
        return pow_rational(value_, q / q_);
    }

    friend bool operator==(const NormValue& a, const NormValue& b) {
        return compare(a, b) == 0;
    }
    friend bool operator<(const NormValue& a, const NormValue& b) {
        return compare(a, b) < 0;
    }
    friend bool operator<=(const NormValue& a, const NormValue& b) {
        return compare(a, b) <= 0;
    }
    friend bool operator>(const NormValue& a, const NormValue& b) { return b < a; }
    friend bool operator>=(const NormValue& a, const NormValue& b) { return b <= a; }

    static const NormValue& max(const NormValue& a, const NormValue& b) {
        return a < b ? b : a;
    }

    NormValue scaled(const Rational& c) const {
        if (c < 0) throw validation_error("norm values scale by nonnegative factors");
        if (is_exact()) return exact(value_ * c);
        return qth_power(value_ * pow_rational(c, q_), q_);
    }

    /// Exact sums exist only between Exact values; adding an irrational root
    /// to a rational can not stay in the exact domain.
    NormValue plus(const NormValue& o) const {
        if (!is_exact() || !o.is_exact())
            throw validation_error("sum of norm values needs exact operands");
        return exact(value_ + o.value_);
    }

    double to_double() const {
        double base = static_cast<double>(value_);
        if (is_exact()) return base;
        return std::pow(base, 1.0 / static_cast<double>(q_));
    }

    /// "p/q" for exact values, "(p/q)^(1/k)" for irrational roots.
    std::string str() const {
        if (is_exact()) return format_rational(value_);
        return "(" + format_rational(value_) + ")^(1/" + std::to_string(q_) + ")";
    }

  private:
    // Exact semantics: a == Exact(value_) when q_ == 1, else a^q_ == value_.
    static int compare(const NormValue& a, const NormValue& b) {
        if (a.q_ == b.q_) {
            if (a.value_ == b.value_) return 0;
            return a.value_ < b.value_ ? -1 : 1;
        }
        if (a.is_exact() && a.value_ < 0) return -1;  // roots are nonnegative
        if (b.is_exact() && b.value_ < 0) return 1;
        Rational pa = pow_rational(a.value_, b.q_);
        Rational pb = pow_rational(b.value_, a.q_);
        if (pa == pb) return 0;
        return pa < pb ? -1 : 1;
    }

    Rational value_ = 0;  // the value itself, or its q-th power
    unsigned q_ = 1;      // 1 means Exact
};

}  // namespace greedylab
