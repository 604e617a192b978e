#pragma once

#include "constructions.hpp"

#include <cstdint>
#include <vector>

namespace greedylab {

/// Shape of a randomized test corpus. Identical specs regenerate identical
/// corpora on any machine under any parallel schedule: every trial owns a
/// counter-derived generator keyed by (seed, stream, trial) alone, never by
/// how many draws other trials made.
struct CorpusSpec {
    std::uint64_t seed = 0;
    std::uint64_t trials = 500;
    std::size_t supp_min = 1;  // support size range
    std::size_t supp_max = 8;
    IntInterval window{1, 40};       // admissible index window
    std::vector<Rational> grid;      // finite value grid; empty = uniform mode
    std::int64_t max_den = 64;       // uniform mode: denominators 1..max_den
    std::int64_t max_num = 4;        // uniform mode: |value| <= max_num
};

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial)
        : state_(mix(mix(mix(seed) ^ stream) ^ trial)) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in [0, n); n >= 1. The modulo bias is immaterial for corpus
    /// sampling and keeps the draw count per call fixed.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1u; }
    int sign() { return coin() ? 1 : -1; }

  private:
    static std::uint64_t mix(std::uint64_t x) { return splitmix64(x); }
    std::uint64_t state_;
};

/// Nonzero scalar from the grid, or from the uniform num/den lattice.
inline Rational random_value(TrialRng& rng, const CorpusSpec& spec) {
    if (!spec.grid.empty()) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const Rational& v = spec.grid[rng.below(spec.grid.size())];
            if (v != 0) return v;
        }
        throw validation_error("value grid holds no nonzero scalar");
    }
    std::int64_t den = rng.in_range(1, spec.max_den);
    std::int64_t num = rng.in_range(1, spec.max_num * den);
    return Rational(rng.sign() * num, den);
}

/// Distinct indices inside the window, uniformly without replacement.
inline std::vector<Index> random_indices(TrialRng& rng, const IntInterval& window,
                                         std::size_t count) {
    std::size_t width = window.empty()
                            ? 0
                            : static_cast<std::size_t>(window.hi - window.lo + 1);
    if (count > width) count = width;
    std::vector<Index> out;
    if (2 * count > width) {
        for (Index n = window.lo; n <= window.hi; ++n) out.push_back(n);
        for (std::size_t i = width; i > 1; --i)
            std::swap(out[i - 1], out[rng.below(i)]);
        out.resize(count);
    } else {
        while (out.size() < count) {
            Index n = window.lo + static_cast<Index>(rng.below(width));
            bool seen = false;
            for (Index m : out) seen = seen || m == n;
            if (!seen) out.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline IndexSet random_subset(TrialRng& rng, const IntInterval& window,
                              std::size_t max_size) {
    return IndexSet(random_indices(rng, window, rng.below(max_size + 1)));
}

inline FinSeq random_seq(TrialRng& rng, const CorpusSpec& spec) {
    std::size_t count =
        spec.supp_min +
        static_cast<std::size_t>(rng.below(spec.supp_max - spec.supp_min + 1));
    std::vector<FinSeq::Entry> es;
    for (Index n : random_indices(rng, spec.window, count))
        es.emplace_back(n, random_value(rng, spec));
    return FinSeq(std::move(es));
}

inline FinSeq random_nonneg_seq(TrialRng& rng, const CorpusSpec& spec) {
    std::vector<FinSeq::Entry> es;
    for (const auto& [n, v] : random_seq(rng, spec).entries())
        es.emplace_back(n, abs(v));
    return FinSeq(std::move(es));
}

/// Uniform shape of a greedy set: a full prefix of modulus levels plus an
/// arbitrary slice of the next level (every greedy set arises this way).
inline IndexSet random_greedy_set(TrialRng& rng, const FinSeq& f) {
    GreedyFamily fam(f);
    if (fam.level_count() == 0) return IndexSet();
    std::size_t l = rng.below(fam.level_count() + 1);
    if (l == fam.level_count()) return fam.support();
    std::vector<Index> slice;
    for (Index n : fam.levels()[l].members)
        if (rng.coin()) slice.push_back(n);
    return fam.prefix(l).unite(IndexSet(std::move(slice)));
}

inline IntInterval random_interval(TrialRng& rng, const IntInterval& window) {
    Index a = window.lo + static_cast<Index>(
                              rng.below(static_cast<std::uint64_t>(window.hi - window.lo + 1)));
    Index b = window.lo + static_cast<Index>(
                              rng.below(static_cast<std::uint64_t>(window.hi - window.lo + 1)));
    return a <= b ? IntInterval(a, b) : IntInterval(b, a);
}

/// Bijection of the window (identity off it).
inline Permutation random_window_permutation(TrialRng& rng,
                                             const IntInterval& window) {
    std::vector<Index> targets;
    for (Index n = window.lo; n <= window.hi; ++n) targets.push_back(n);
    for (std::size_t i = targets.size(); i > 1; --i)
        std::swap(targets[i - 1], targets[rng.below(i)]);
    std::map<Index, Index> m;
    for (Index n = window.lo; n <= window.hi; ++n)
        m[n] = targets[static_cast<std::size_t>(n - window.lo)];
    return Permutation(std::move(m));
}

/// Blockwise-constant Leibniz data: each block carries one value, chosen low
/// enough that block sums decrease and late values stay below early ones;
/// the result is re-certified by leibniz_check.
inline LeibnizData random_leibniz(TrialRng& rng, std::size_t max_blocks = 5) {
    std::size_t B = 1 + rng.below(max_blocks);
    std::vector<IntInterval> blocks;
    std::vector<FinSeq::Entry> es;
    Index at = 1;
    Rational level(4);
    Rational prev_sum = 0;
    for (std::size_t k = 0; k < B; ++k) {
        at += static_cast<Index>(rng.below(3));
        Index L = 1 + static_cast<Index>(rng.below(4));
        blocks.emplace_back(at, at + L - 1);
        if (k > 0) {
            Rational cap = prev_sum / L;
            if (level < cap) cap = level;
            std::int64_t a = rng.in_range(1, 3);
            level = cap * a / (a + 1);
        }
        for (Index i = 0; i < L; ++i) es.emplace_back(at + i, level);
        prev_sum = level * L;
        at += L;
    }
    return leibniz_check(FinSeq(std::move(es)), std::move(blocks));
}

}  // namespace greedylab
