#pragma once

#include "norms.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace greedylab {

/**
 * Nonnegative sequence organized into interval blocks that behave like the
 * terms of an alternating series: blocks sit strictly left to right, block
 * sums are nonincreasing, and every supported value in a block exceeds
 * every value in the next one. alpha is the first block sum, omega_trunc
 * the last; together they bound the gauges of every signed vector built
 * from the data.
 */
struct LeibnizData {
    FinSeq g;
    std::vector<IntInterval> blocks;
    Rational alpha;
    Rational omega_trunc;
};

/// Validates the block structure clause by clause and packages the data.
/// The first violated clause is reported, with the witness indices spelled
/// out in the message. Empty blocks of support are fine (min over nothing
/// counts as infinite), and a zero sequence passes against any blocks.
inline LeibnizData leibniz_check(const FinSeq& g,
                                 std::vector<IntInterval> blocks) {
    for (auto& [n, v] : g.entries())
        if (v < 0)
            throw validation_error("negative entry: index " + std::to_string(n));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].empty())
            throw validation_error("right-dominance: block " +
                                   std::to_string(k + 1) + " is empty");
        if (k > 0 && blocks[k - 1].hi >= blocks[k].lo)
            throw validation_error(
                "right-dominance: block " + std::to_string(k) + " ends at " +
                std::to_string(blocks[k - 1].hi) + ", block " +
                std::to_string(k + 1) + " starts at " +
                std::to_string(blocks[k].lo));
    }
    for (auto& [n, v] : g.entries()) {
        bool covered = false;
        for (auto& B : blocks)
            if (B.contains(n)) {
                covered = true;
                break;
            }
        if (!covered)
            throw validation_error("stray support: index " + std::to_string(n) +
                                   " lies outside every block");
    }
    std::vector<Rational> sums;
    sums.reserve(blocks.size());
    for (auto& B : blocks) sums.push_back(g.sum_over(B));
    for (std::size_t k = 1; k < sums.size(); ++k)
        if (sums[k] > sums[k - 1])
            throw validation_error(
                "block sums: sum over block " + std::to_string(k + 1) + " (" +
                format_rational(sums[k]) + ") exceeds sum over block " +
                std::to_string(k) + " (" + format_rational(sums[k - 1]) + ")");
    for (std::size_t k = 1; k < blocks.size(); ++k) {
        // min over the supported part of block k must beat max over block k+1
        std::optional<std::pair<Index, Rational>> lo;
        for (auto& [n, v] : g.entries())
            if (blocks[k - 1].contains(n) && (!lo || v < lo->second))
                lo = {n, v};
        if (!lo) continue;
        for (auto& [n, v] : g.entries())
            if (blocks[k].contains(n) && v >= lo->second)
                throw validation_error(
                    "value separation: g[" + std::to_string(n) + "] = " +
                    format_rational(v) + " in block " + std::to_string(k + 1) +
                    " reaches g[" + std::to_string(lo->first) + "] = " +
                    format_rational(lo->second) + " in block " +
                    std::to_string(k));
    }
    LeibnizData data;
    data.g = g;
    data.alpha = sums.empty() ? Rational(0) : sums.front();
    data.omega_trunc = sums.empty() ? Rational(0) : sums.back();
    data.blocks = std::move(blocks);
    return data;
}

/// Flips the sign of every even-numbered block. The interval gauge of the
/// result is exactly alpha: partial interval sums against any greedy set
/// telescope like an alternating series, so the first block dominates.
inline FinSeq alternating_from_leibniz(const LeibnizData& data) {
    SignVector tau;
    for (std::size_t k = 1; k < data.blocks.size(); k += 2)
        for (Index n = data.blocks[k].lo; n <= data.blocks[k].hi; ++n)
            tau.set(n, -1);
    return data.g.multiply(tau);
}

/// Restriction of the alternating vector to a subset of blocks. Signs
/// follow the rank within the selection, so the j-th selected block gets
/// (-1)^(j-1). Any two distinct selections stay at interval-gauge distance
/// at least the largest block sum over the symmetric difference, which is
/// never below omega_trunc.
inline FinSeq leibniz_subfamily(const LeibnizData& data, const IndexSet& N) {
    for (Index k : N)
        if (k > static_cast<Index>(data.blocks.size()))
            throw validation_error("block selector out of range: " +
                                   std::to_string(k));
    SignVector tau;
    std::vector<Index> keep;
    std::size_t rank = 0;
    for (Index k : N) {
        const IntInterval& J = data.blocks[static_cast<std::size_t>(k - 1)];
        for (Index n = J.lo; n <= J.hi; ++n) {
            if (rank % 2 == 1) tau.set(n, -1);
            keep.push_back(n);
        }
        ++rank;
    }
    return data.g.project(IndexSet(std::move(keep))).multiply(tau);
}

struct DiscontinuityWitness {
    FinSeq vector;
    Rational predicted;
};

/// The two-spike-plus-tail vector e_1 - t*e_2 + sum_{n=3..N} e_n/n whose
/// combined norm jumps as t crosses 1: the value is 1 + a - t below 1 and
/// 1 + a at 1, where a is the tail mass. Requires a >= 1 (N >= 8 is always
/// enough) so the three-block evaluation applies; the op cross-checks the
/// prediction against the computed norm whenever the interval gauge is the
/// dominant part, which holds for every admitted N.
inline DiscontinuityWitness discontinuity_witness(Index N, const Rational& t) {
    if (t < 0 || t > 1)
        throw validation_error("weight must lie in [0,1]");
    std::vector<FinSeq::Entry> es;
    es.emplace_back(1, Rational(1));
    es.emplace_back(2, -t);
    Rational a = 0;
    for (Index n = 3; n <= N; ++n) {
        Rational v(1, n);
        es.emplace_back(n, v);
        a += v;
    }
    if (a < 1)
        throw validation_error("tail mass below 1: raise the cutoff");
    FinSeq G(std::move(es));
    Rational predicted = 1 + a;
    if (t != 1) predicted -= t;
    Rational gauge = norm_B(G);
    NormValue ambient = lorentz_norm(G, SpaceSpec::lorentz_inf());
    if (ambient.exact_value() <= gauge && gauge != predicted)
        throw std::logic_error("three-block prediction failed");
    return {std::move(G), std::move(predicted)};
}

/**
 * Parameter triple for the oscillating block sequences: a positive strictly
 * decreasing level sequence b, block half-lengths m, and per-block lifts
 * eps with 0 < eps_k < b_{k-1} - b_k. Entries are addressed 1-based
 * (slot 0 of m and eps is unused; b[0] is the opening level). Preset A
 * triples the half-length per step, preset B doubles it; both use
 * b_k = 2^-k and eps_k = 4^-k.
 */
struct H0Params {
    enum class Preset { A, B, Custom };

    Preset preset = Preset::Custom;
    unsigned depth = 0;
    std::vector<Rational> b;    // b[k], k = 0..depth
    std::vector<Index> m;       // m[k], k = 1..depth
    std::vector<Rational> eps;  // eps[k], k = 1..depth

    static H0Params preset_a(unsigned K = 6) { return dyadic(Preset::A, K, 3); }
    static H0Params preset_b(unsigned K = 7) { return dyadic(Preset::B, K, 2); }

    static H0Params custom(std::vector<Rational> levels, std::vector<Index> half,
                           std::vector<Rational> lifts) {
        H0Params p;
        p.preset = Preset::Custom;
        if (levels.empty())
            throw validation_error("level sequence must start at b_0");
        p.depth = static_cast<unsigned>(levels.size() - 1);
        if (half.size() != p.depth || lifts.size() != p.depth)
            throw validation_error("half-lengths and lifts must cover depth " +
                                   std::to_string(p.depth));
        p.b = std::move(levels);
        p.m.resize(p.depth + 1, 0);
        p.eps.resize(p.depth + 1, Rational(0));
        for (unsigned k = 1; k <= p.depth; ++k) {
            p.m[k] = half[k - 1];
            p.eps[k] = lifts[k - 1];
        }
        validate(p);
        return p;
    }

  private:
    static H0Params dyadic(Preset which, unsigned K, Index base) {
        H0Params p;
        p.preset = which;
        p.depth = K;
        p.b.resize(K + 1);
        p.m.resize(K + 1, 0);
        p.eps.resize(K + 1, Rational(0));
        p.b[0] = 1;
        Index mk = 1;
        for (unsigned k = 1; k <= K; ++k) {
            p.b[k] = p.b[k - 1] / 2;
            mk *= base;
            p.m[k] = mk;
            p.eps[k] = pow_rational(Rational(1, 4), k);
        }
        validate(p);
        return p;
    }

    static void validate(const H0Params& p) {
        if (p.depth < 1)
            throw validation_error("depth must be >= 1");
        if (p.b[0] <= 0)
            throw validation_error("levels must be positive");
        for (unsigned k = 1; k <= p.depth; ++k) {
            if (p.b[k] <= 0)
                throw validation_error("levels must be positive");
            if (p.b[k] >= p.b[k - 1])
                throw validation_error("levels must decrease strictly at step " +
                                       std::to_string(k));
            if (p.m[k] < 1)
                throw validation_error("half-lengths must be positive at step " +
                                       std::to_string(k));
            if (p.eps[k] <= 0 || p.eps[k] >= p.b[k - 1] - p.b[k])
                throw validation_error(
                    "lift at step " + std::to_string(k) +
                    " must sit strictly inside the level gap");
        }
    }
};

/**
 * Index bookkeeping for the oscillating sequences, all 1-based per level k
 * with slot 0 unused. Block k covers J[k] = [1+2n_{k-1}, 2n_k] where n_k
 * accumulates the half-lengths; J_plus[k] and J_minus[k] are its odd and
 * even positions, I[k] the union of the earlier blocks, and G[k] = I[k]
 * plus the odd half. The doubled layout sends block k to H[k] of twice the
 * width: phi_plus relocates it onto the left half, phi_minus onto the
 * right half, both preserving order.
 */
struct H0Blocks {
    unsigned depth = 0;
    std::vector<Index> n;  // n[k], k = 0..depth
    std::vector<IntInterval> J;
    std::vector<IndexSet> J_plus, J_minus;
    std::vector<IndexSet> I, G;
    std::vector<IntInterval> H, H_plus, H_minus;
    Permutation phi_plus, phi_minus;
};

inline H0Blocks h0_blocks(const H0Params& p, unsigned K = 0) {
    if (K == 0) K = p.depth;
    if (K > p.depth)
        throw validation_error("depth exceeds stored parameters");
    H0Blocks bl;
    bl.depth = K;
    bl.n.assign(K + 1, 0);
    for (unsigned k = 1; k <= K; ++k) bl.n[k] = bl.n[k - 1] + p.m[k];
    bl.J.resize(K + 1);
    bl.J_plus.resize(K + 1);
    bl.J_minus.resize(K + 1);
    bl.I.resize(K + 1);
    bl.G.resize(K + 1);
    bl.H.resize(K + 1);
    bl.H_plus.resize(K + 1);
    bl.H_minus.resize(K + 1);
    std::map<Index, Index> up, down;
    for (unsigned k = 1; k <= K; ++k) {
        Index lo = 1 + 2 * bl.n[k - 1], hi = 2 * bl.n[k];
        bl.J[k] = IntInterval(lo, hi);
        std::vector<Index> odd, even;
        for (Index i = lo; i <= hi; ++i) (i % 2 == 1 ? odd : even).push_back(i);
        bl.J_plus[k] = IndexSet(std::move(odd));
        bl.J_minus[k] = IndexSet(std::move(even));
        bl.I[k] = k == 1 ? IndexSet()
                         : IndexSet::interval(IntInterval(1, 2 * bl.n[k - 1]));
        bl.G[k] = bl.I[k].unite(bl.J_plus[k]);
        Index half = 2 * p.m[k];
        bl.H[k] = IntInterval(1 + 4 * bl.n[k - 1], 4 * bl.n[k]);
        bl.H_plus[k] = IntInterval(1 + 4 * bl.n[k - 1], 4 * bl.n[k - 1] + half);
        bl.H_minus[k] = IntInterval(1 + 4 * bl.n[k - 1] + half, 4 * bl.n[k]);
        for (Index i = 1; i <= half; ++i) {
            up[2 * bl.n[k - 1] + i] = 4 * bl.n[k - 1] + i;
            down[2 * bl.n[k - 1] + i] = 4 * bl.n[k - 1] + half + i;
        }
    }
    bl.phi_plus = Permutation(std::move(up));
    bl.phi_minus = Permutation(std::move(down));
    return bl;
}

/**
 * The strictly decreasing scaffold (c_n)_{n=0..2n_K} pinned to c_{2n_k} =
 * b_k. Within block k the first interior value is the midpoint
 * (b_{k-1} - eps_k + b_k)/2 and the rest decrease arithmetically, with the
 * total interior drop capped at half of min(eps_k, headroom above b_k).
 * Three exact checks certify the result: the entry gap b_{k-1} - c_first
 * exceeds eps_k, the interior spread stays below eps_k, and the whole run
 * decreases strictly. They can only fire for out-of-contract custom
 * parameters, never for validated ones.
 */
inline std::vector<Rational> build_c(const H0Params& p, unsigned K = 0) {
    if (K == 0) K = p.depth;
    if (K > p.depth)
        throw validation_error("depth exceeds stored parameters");
    std::vector<Index> n(K + 1, 0);
    for (unsigned k = 1; k <= K; ++k) n[k] = n[k - 1] + p.m[k];
    std::vector<Rational> c(static_cast<std::size_t>(2 * n[K] + 1));
    c[0] = p.b[0];
    for (unsigned k = 1; k <= K; ++k) {
        Index lo = 2 * n[k - 1], hi = 2 * n[k];
        Index cnt = hi - lo - 1;
        Rational first = (p.b[k - 1] - p.eps[k] + p.b[k]) / 2;
        Rational headroom = first - p.b[k];
        Rational drop = (p.eps[k] < headroom ? p.eps[k] : headroom) / 2;
        if (cnt == 1) {
            c[static_cast<std::size_t>(lo + 1)] = first;
        } else {
            Rational step = drop / (cnt - 1);
            for (Index i = 0; i < cnt; ++i)
                c[static_cast<std::size_t>(lo + 1 + i)] = first - step * i;
        }
        c[static_cast<std::size_t>(hi)] = p.b[k];
    }
    for (unsigned k = 1; k <= K; ++k) {
        Index lo = 2 * n[k - 1], hi = 2 * n[k];
        if (p.b[k - 1] - c[static_cast<std::size_t>(lo + 1)] <= p.eps[k])
            throw validation_error("entry gap too small at block " +
                                   std::to_string(k));
        if (c[static_cast<std::size_t>(lo + 2)] -
                c[static_cast<std::size_t>(hi - 1)] >=
            p.eps[k])
            throw validation_error("interior spread too wide at block " +
                                   std::to_string(k));
    }
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] >= c[i - 1])
            throw validation_error("decrease breaks at position " +
                                   std::to_string(i));
    return c;
}

struct H0Result {
    FinSeq f0, g0, h0;
    H0Blocks blocks;
};

/**
 * The oscillating sum h0 = f0 + g0 on [1, 2n_K]: f0 alternates the scaffold
 * values as ((-1)^(n-1) c_n), and g0 lifts the odd positions of block k by
 * eps_k. The lift keeps all odd-position moduli of block k above all of
 * its even-position moduli while both stay inside (b_k, b_{k-1}), so the
 * greedy sets of h0 sweep each block odd half first.
 */
inline H0Result build_h0(const H0Params& p, unsigned K = 0) {
    if (K == 0) K = p.depth;
    H0Blocks bl = h0_blocks(p, K);
    std::vector<Rational> c = build_c(p, K);
    std::vector<FinSeq::Entry> fe, ge;
    for (unsigned k = 1; k <= K; ++k)
        for (Index nn = bl.J[k].lo; nn <= bl.J[k].hi; ++nn) {
            const Rational& cn = c[static_cast<std::size_t>(nn)];
            if (nn % 2 == 1) {
                fe.emplace_back(nn, cn);
                ge.emplace_back(nn, p.eps[k]);
            } else {
                fe.emplace_back(nn, -cn);
            }
        }
    H0Result r;
    r.f0 = FinSeq(std::move(fe));
    r.g0 = FinSeq(std::move(ge));
    r.h0 = r.f0 + r.g0;
    r.blocks = std::move(bl);
    return r;
}

struct DoubledResult {
    FinSeq h;
    H0Blocks blocks;
};

/**
 * The doubled vector h: block k of h0 is copied onto the left half of H[k]
 * and negated onto the right half. Every modulus now appears twice, so a
 * greedy set of h picks a pair of greedy sets of h0 that differ in at most
 * one element; branch sums over even-sized greedy sets cancel exactly, and
 * an odd-sized one leaves a single scaffold value behind.
 */
inline DoubledResult build_h(const H0Params& p, unsigned K = 0) {
    H0Result base = build_h0(p, K);
    FinSeq h = base.h0.permute(base.blocks.phi_plus) -
               base.h0.permute(base.blocks.phi_minus);
    return {std::move(h), std::move(base.blocks)};
}

/**
 * Carves consecutive support blocks of a nonincreasing nonnegative g whose
 * sums land in the shrinking windows [t(1+2^-k), t(1+2^-k+2^-k-2)],
 * k = 1..K. Entries larger than the window width are skipped first, so the
 * accumulated sum cannot overshoot; the windows are disjoint and decrease,
 * which hands the block sums the required monotonicity. The assembled data
 * is passed through leibniz_check, so every structural clause is certified
 * on the way out.
 */
inline LeibnizData build_admissible(const FinSeq& g, const Rational& t,
                                    unsigned K) {
    if (t <= 0)
        throw validation_error("threshold must be positive");
    const auto& es = g.entries();
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (es[i].second < 0)
            throw validation_error("negative entry: index " +
                                   std::to_string(es[i].first));
        if (i > 0 && es[i].second > es[i - 1].second)
            throw validation_error(
                "values must be nonincreasing along the support");
    }
    std::vector<IntInterval> blocks;
    std::vector<FinSeq::Entry> kept;
    std::size_t pos = 0;
    for (unsigned k = 1; k <= K; ++k) {
        Rational scale = pow_rational(Rational(1, 2), k);
        Rational lo = t * (1 + scale);
        Rational width = t * scale / 4;
        while (pos < es.size() && es[pos].second > width) ++pos;
        Rational sum = 0;
        std::size_t start = pos;
        while (pos < es.size() && sum < lo) {
            sum += es[pos].second;
            kept.push_back(es[pos]);
            ++pos;
        }
        if (sum < lo)
            throw validation_error("insufficient tail mass");
        blocks.emplace_back(es[start].first, es[pos - 1].first);
    }
    LeibnizData data = leibniz_check(FinSeq(std::move(kept)), std::move(blocks));
    for (unsigned k = 1; k <= K; ++k) {
        Rational scale = pow_rational(Rational(1, 2), k);
        Rational sum = data.g.sum_over(data.blocks[k - 1]);
        if (sum < t * (1 + scale) || sum > t * (1 + scale + scale / 4))
            throw validation_error("block sum escaped its window at step " +
                                   std::to_string(k));
    }
    return data;
}

}  // namespace greedylab
