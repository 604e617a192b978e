#pragma once

#include "norm_value.hpp"
#include "sequences.hpp"

#include <string>

namespace greedylab {

/// Ambient symmetric space selector: the Lorentz scale with q in {1,2,...}
/// or infinity. q=1 is plain l1; q=infinity is the weak-l1 scale whose
/// finitely supported part is the separable core.
struct SpaceSpec {
    bool inf = false;
    unsigned q = 1;  // meaningful when !inf

    static SpaceSpec lorentz(unsigned qq) {
        if (qq < 1) throw validation_error("Lorentz exponent must be >= 1");
        return SpaceSpec{false, qq};
    }
    static SpaceSpec lorentz_inf() { return SpaceSpec{true, 0}; }

    /// Accepts "1", "2", ... or "inf".
    static SpaceSpec parse(const std::string& text) {
        if (text == "inf" || text == "infinity") return lorentz_inf();
        for (char c : text)
            if (c < '0' || c > '9')
                throw validation_error("bad Lorentz exponent: '" + text + "'");
        if (text.empty() || text.size() > 6)
            throw validation_error("bad Lorentz exponent: '" + text + "'");
        return lorentz(static_cast<unsigned>(std::stoul(text)));
    }

    std::string str() const { return inf ? "inf" : std::to_string(q); }
    bool operator==(const SpaceSpec&) const = default;
};

/// Shifted Lorentz functional: the weighted q-aggregate of the rearrangement
/// tail starting after position k. At q=infinity this is sup_m m*D(f)(m+k);
/// at finite q it is (sum_m m^(q-1) D(f)(m+k)^q)^(1/q), kept exact as a
/// QthPower when the root is irrational.
inline NormValue rho_1q(const FinSeq& f, std::size_t k, const SpaceSpec& s) {
    auto D = f.dec_rearrangement();
    if (s.inf) {
        Rational best = 0;
        for (std::size_t m = 1; m + k <= D.size(); ++m)
            best = std::max(best, Rational(m) * D[m + k - 1]);
        return NormValue::exact(best);
    }
    if (s.q == 1) {
        Rational tail = 0;
        for (std::size_t i = k; i < D.size(); ++i) tail += D[i];
        return NormValue::exact(tail);
    }
    Rational power = 0;
    for (std::size_t m = 1; m + k <= D.size(); ++m)
        power += pow_rational(Rational(m), s.q - 1) * pow_rational(D[m + k - 1], s.q);
    return NormValue::qth_power(power, s.q);
}

inline NormValue lorentz_norm(const FinSeq& f, const SpaceSpec& s) {
    return rho_1q(f, 0, s);
}

inline Rational norm_l1(const FinSeq& f) {
    Rational s = 0;
    for (auto& [n, v] : f.entries()) s += abs(v);
    return s;
}

inline Rational norm_linf(const FinSeq& f) {
    Rational s = 0;
    for (auto& [n, v] : f.entries()) s = std::max(s, abs(v));
    return s;
}

}  // namespace greedylab
