#pragma once

#include "greedy.hpp"
#include "lorentz.hpp"

#include <numeric>
#include <vector>

namespace greedylab {

namespace detail {

/// Integer view of a sequence over a common denominator. All norm kernels
/// run on these scaled values, so long scans stay in machine-word-friendly
/// integer arithmetic instead of repeated rational normalization.
struct ScaledSeq {
    Int denom = 1;
    std::vector<Index> idx;          // ascending support positions
    std::vector<Int> w;              // scaled nonzero values
    std::vector<std::size_t> level;  // modulus rank of each entry, 0 = largest
    std::size_t level_count = 0;
};

inline ScaledSeq scale(const FinSeq& f) {
    ScaledSeq s;
    for (auto& [n, v] : f.entries())
        s.denom = boost::multiprecision::lcm(s.denom, denominator(v));
    std::vector<Int> mag;
    for (auto& [n, v] : f.entries()) {
        s.idx.push_back(n);
        s.w.push_back(numerator(v) * (s.denom / denominator(v)));
        mag.push_back(abs(s.w.back()));
    }
    std::vector<std::size_t> order(s.w.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    s.level.resize(s.w.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && mag[order[r]] != mag[order[r - 1]]) ++s.level_count;
        s.level[order[r]] = s.level_count;
    }
    if (!order.empty()) ++s.level_count;
    return s;
}

}  // namespace detail

/// beta(f, A): largest |interval sum| of f after zeroing the positions of A.
/// One prefix scan; the best interval realizes max prefix minus min prefix
/// (the empty prefix participates on both sides).
inline Rational beta(const FinSeq& f, const IndexSet& A) {
    auto s = detail::scale(f);
    Int P = 0, maxP = 0, minP = 0;
    for (std::size_t i = 0; i < s.w.size(); ++i) {
        if (A.contains(s.idx[i])) continue;
        P += s.w[i];
        if (P > maxP) maxP = P;
        if (P < minP) minP = P;
    }
    return Rational(maxP - minP, s.denom);
}

/**
 * The interval gauge: sup over greedy sets A and integer intervals I of
 * |sum over I minus A|.
 *
 * Per boundary level l the greedy set keeps every higher level, drops lower
 * ones, and picks an arbitrary slice of level l; for a fixed interval the
 * optimal slice removes exactly the level-l entries whose sign fights the
 * target direction. So two derived sequences per level (level-l entries
 * restricted to positives resp. negatives, deeper levels kept, higher levels
 * zeroed) carry the whole supremum, one directed subarray scan each.
 */
inline Rational norm_B(const FinSeq& f) {
    auto s = detail::scale(f);
    Int best = 0;
    for (std::size_t l = 0; l < s.level_count; ++l) {
        Int P = 0, minP = 0;  // prefix state of the positive-direction view
        Int Q = 0, maxQ = 0;  // prefix state of the negative-direction view
        for (std::size_t i = 0; i < s.w.size(); ++i) {
            if (s.level[i] < l) continue;
            const Int& w = s.w[i];
            if (s.level[i] > l) {
                P += w;
                Q += w;
            } else if (w > 0) {
                P += w;
            } else {
                Q += w;
            }
            if (P - minP > best) best = P - minP;
            if (P < minP) minP = P;
            if (maxQ - Q > best) best = maxQ - Q;
            if (Q > maxQ) maxQ = Q;
        }
    }
    return Rational(best, s.denom);
}

/// Definitional cross-check: enumerate every greedy subset of the support
/// and every interval. Exponential on tie levels, hence the support cap.
inline Rational norm_B_oracle(const FinSeq& f, std::size_t support_cap = 12) {
    if (f.support_size() > support_cap)
        throw cap_exceeded("support exceeds oracle cap");
    auto s = detail::scale(f);
    Int best = 0;
    GreedySetEnumerator en(f);
    while (auto A = en.next()) {
        Int P = 0, maxP = 0, minP = 0;
        for (std::size_t i = 0; i < s.w.size(); ++i) {
            if (A->contains(s.idx[i])) continue;
            P += s.w[i];
            if (P > maxP) maxP = P;
            if (P < minP) minP = P;
        }
        if (maxP - minP > best) best = maxP - minP;
    }
    return Rational(best, s.denom);
}

/// Greedy sum of f; finite supports stabilize at the full support sum.
inline Rational sigma_g(const FinSeq& f) { return f.total(); }

/// Defect of the greedy sum against the indicator functional of A.
inline Rational sigma_g_defect(const FinSeq& f, const IndexSet& A) {
    return sigma_g(f) - f.sum_over(A);
}

/**
 * The greedy-sum gauge: max over greedy sets A of |sigma_g(f) - sum over A|.
 *
 * With the boundary level l fixed, the defect is linear in the slice sum,
 * which sweeps an interval whose endpoints are the all-negatives and
 * all-positives slices; the maximum modulus sits at an endpoint.
 */
inline Rational norm_A(const FinSeq& f) {
    auto s = detail::scale(f);
    std::vector<Int> lvl_sum(s.level_count, 0), lvl_pos(s.level_count, 0),
        lvl_neg(s.level_count, 0);
    Int sigma = 0;
    for (std::size_t i = 0; i < s.w.size(); ++i) {
        const Int& w = s.w[i];
        sigma += w;
        lvl_sum[s.level[i]] += w;
        (w > 0 ? lvl_pos : lvl_neg)[s.level[i]] += w;
    }
    Int best = 0, prefix = 0;
    for (std::size_t l = 0; l < s.level_count; ++l) {
        Int base = sigma - prefix;
        Int high = abs(base - lvl_pos[l]), low = abs(base - lvl_neg[l]);
        if (high > best) best = high;
        if (low > best) best = low;
        prefix += lvl_sum[l];
    }
    return Rational(best, s.denom);
}

inline Rational norm_A_oracle(const FinSeq& f, std::size_t support_cap = 12) {
    if (f.support_size() > support_cap)
        throw cap_exceeded("support exceeds oracle cap");
    Rational sigma = sigma_g(f), best = 0;
    GreedySetEnumerator en(f);
    while (auto A = en.next())
        best = std::max(best, abs(sigma - f.sum_over(*A)));
    return best;
}

enum class GaugeKind { B, A };

/// max of the chosen greedy gauge and the ambient Lorentz norm, exact even
/// when the Lorentz side is an irrational root.
inline NormValue norm_combined(const FinSeq& f, const SpaceSpec& s, GaugeKind which) {
    Rational g = which == GaugeKind::B ? norm_B(f) : norm_A(f);
    return NormValue::max(NormValue::exact(g), lorentz_norm(f, s));
}

/// Affine gauge: Lorentz norm plus eps times the interval gauge. Staying in
/// exact arithmetic requires the Lorentz value to be rational, so only
/// q in {1, inf} is admitted.
inline NormValue gauge_eps(const FinSeq& f, const SpaceSpec& s, const Rational& eps) {
    if (!s.inf && s.q >= 2)
        throw validation_error("affine gauge stays exact only for q in {1,inf}");
    return NormValue::exact(lorentz_norm(f, s).exact_value() + eps * norm_B(f));
}

}  // namespace greedylab
