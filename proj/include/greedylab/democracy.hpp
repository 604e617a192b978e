#pragma once

#include "norms.hpp"

#include <string>
#include <vector>

namespace greedylab {

enum class SelectorKind { B, A, Lorentz, BCombined, ACombined };

/// Which norm a democracy profile (or a CLI evaluation) speaks about.
struct NormSelector {
    SelectorKind kind = SelectorKind::B;
    SpaceSpec space;  // meaningful for Lorentz and the combined kinds

    /// "B" | "A" | "lorentz:q" | "B-comb:lorentz:q" | "A-comb:lorentz:q"
    static NormSelector parse(const std::string& text) {
        auto lorentz_tail = [](const std::string& t, const std::string& prefix)
            -> std::optional<SpaceSpec> {
            if (t.rfind(prefix + "lorentz:", 0) != 0) return std::nullopt;
            return SpaceSpec::parse(t.substr(prefix.size() + 8));
        };
        if (text == "B") return {SelectorKind::B, {}};
        if (text == "A") return {SelectorKind::A, {}};
        if (auto s = lorentz_tail(text, "")) return {SelectorKind::Lorentz, *s};
        if (auto s = lorentz_tail(text, "B-comb:")) return {SelectorKind::BCombined, *s};
        if (auto s = lorentz_tail(text, "A-comb:")) return {SelectorKind::ACombined, *s};
        throw validation_error("unknown space selector: '" + text + "'");
    }

    std::string str() const {
        switch (kind) {
            case SelectorKind::B: return "B";
            case SelectorKind::A: return "A";
            case SelectorKind::Lorentz: return "lorentz:" + space.str();
            case SelectorKind::BCombined: return "B-comb:lorentz:" + space.str();
            case SelectorKind::ACombined: return "A-comb:lorentz:" + space.str();
        }
        return "";
    }
};

inline NormValue evaluate(const NormSelector& sel, const FinSeq& f) {
    switch (sel.kind) {
        case SelectorKind::B: return NormValue::exact(norm_B(f));
        case SelectorKind::A: return NormValue::exact(norm_A(f));
        case SelectorKind::Lorentz: return lorentz_norm(f, sel.space);
        case SelectorKind::BCombined: return norm_combined(f, sel.space, GaugeKind::B);
        case SelectorKind::ACombined: return norm_combined(f, sel.space, GaugeKind::A);
    }
    throw validation_error("unreachable selector kind");
}

struct DemocracyWitness {
    IndexSet set;
    SignVector signs;
};

struct DemocracyProfile {
    std::size_t m_max = 0;
    std::vector<NormValue> lower, upper;                     // position m-1
    std::vector<DemocracyWitness> lower_witness, upper_witness;
};

/// Lorentz norm of an m-point indicator; sign- and position-free.
inline NormValue indicator_lorentz(std::size_t m, const SpaceSpec& s) {
    if (s.inf || s.q == 1) return NormValue::exact(Rational(m));
    Rational power = 0;
    for (std::size_t j = 1; j <= m; ++j)
        power += pow_rational(Rational(j), s.q - 1);
    return NormValue::qth_power(power, s.q);
}

/**
 * Exact democracy functions over signed indicators inside [1, window].
 *
 * Upper: sup of the norm over |A| <= m and all signs; lower: inf over
 * |A| >= m. Constant-modulus vectors admit closed forms. Both greedy gauges
 * give max(p, q) for p plus signs and q minus signs: the best greedy set
 * drops exactly one sign class, and a sign-pure survivor set of size s has
 * value s under either gauge. Lorentz values depend on |A| alone. All the
 * resulting per-size extremes are nondecreasing in |A|, so the upper
 * optimum sits at |A| = m all-plus and the lower one at |A| = m with
 * balanced alternating signs.
 */
inline DemocracyProfile democracy_profile(const NormSelector& sel,
                                          std::size_t m_max, std::size_t window) {
    if (m_max < 1) throw validation_error("m_max must be >= 1");
    if (window < m_max) throw validation_error("window must cover m_max");
    DemocracyProfile prof;
    prof.m_max = m_max;
    for (std::size_t m = 1; m <= m_max; ++m) {
        IndexSet head = IndexSet::interval(IntInterval(1, static_cast<Index>(m)));
        SignVector plus;
        SignVector alt = SignVector::alternating(IntInterval(1, static_cast<Index>(m)));

        NormValue up, low;
        NormValue lor = indicator_lorentz(m, sel.space);
        Rational whole = Rational(m), half = Rational((m + 1) / 2);
        switch (sel.kind) {
            case SelectorKind::B:
            case SelectorKind::A:
                up = NormValue::exact(whole);
                low = NormValue::exact(half);
                break;
            case SelectorKind::Lorentz:
                up = lor;
                low = lor;
                break;
            case SelectorKind::BCombined:
            case SelectorKind::ACombined:
                up = NormValue::max(NormValue::exact(whole), lor);
                low = NormValue::max(NormValue::exact(half), lor);
                break;
        }
        prof.upper.push_back(up);
        prof.lower.push_back(low);
        prof.upper_witness.push_back({head, plus});
        prof.lower_witness.push_back({head, alt});
    }
    return prof;
}

}  // namespace greedylab
