#pragma once

#include "sequences.hpp"

#include <optional>
#include <vector>

namespace greedylab {

struct GreedyLevel {
    Rational modulus;   // > 0
    IndexSet members;   // positions carrying exactly this modulus
    bool operator==(const GreedyLevel&) const = default;
};

/**
 * Level decomposition of supp(f) by coefficient modulus, strictly decreasing.
 *
 * The greedy sets of f inside its support are exactly the empty set together
 * with (union of the first l levels) extended by any nonempty subset of level
 * l+1, so the family is a compact exact representation of that lattice.
 */
class GreedyFamily {
  public:
    explicit GreedyFamily(const FinSeq& f) {
        std::vector<std::pair<Rational, Index>> tagged;
        for (auto& [n, v] : f.entries()) tagged.emplace_back(abs(v), n);
        std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::size_t i = 0;
        while (i < tagged.size()) {
            std::size_t j = i;
            std::vector<Index> members;
            while (j < tagged.size() && tagged[j].first == tagged[i].first)
                members.push_back(tagged[j++].second);
            levels_.push_back({tagged[i].first, IndexSet(std::move(members))});
            i = j;
        }
        prefixes_.resize(levels_.size() + 1);
        for (std::size_t l = 0; l < levels_.size(); ++l)
            prefixes_[l + 1] = prefixes_[l].unite(levels_[l].members);
    }

    const std::vector<GreedyLevel>& levels() const { return levels_; }
    std::size_t level_count() const { return levels_.size(); }

    /// Union of the first l levels (the mandatory part below boundary l).
    const IndexSet& prefix(std::size_t l) const { return prefixes_.at(l); }
    const IndexSet& support() const { return prefixes_.back(); }
    std::size_t support_size() const { return support().size(); }

    /// Number of greedy subsets of supp(f): 1 + sum over levels of 2^m - 1.
    Int count_all() const {
        Int total = 1;
        for (auto& lv : levels_)
            total += pow_int(2, static_cast<unsigned>(lv.members.size())) - 1;
        return total;
    }

    /// Number of greedy subsets of supp(f) with exactly m elements.
    Int count_of_size(std::size_t m) const {
        if (m > support_size()) return 0;
        if (m == 0) return 1;
        std::size_t taken = 0;
        for (auto& lv : levels_) {
            if (m <= taken + lv.members.size())
                return binomial(lv.members.size(), m - taken);
            taken += lv.members.size();
        }
        return 1;  // m == support_size with the loop consumed exactly
    }

    static Int binomial(std::size_t n, std::size_t k) {
        if (k > n) return 0;
        k = std::min(k, n - k);
        Int r = 1;
        for (std::size_t i = 1; i <= k; ++i) {
            r *= Int(n - k + i);
            r /= Int(i);
        }
        return r;
    }

  private:
    std::vector<GreedyLevel> levels_;
    std::vector<IndexSet> prefixes_;  // prefixes_[l] = union of levels < l
};

/// The paper's definition on arbitrary finite A, off-support indices allowed:
/// every coefficient inside A weakly dominates every coefficient outside.
inline bool is_greedy_set(const FinSeq& f, const IndexSet& A) {
    if (A.empty()) return true;
    std::optional<Rational> min_in;
    for (Index n : A) {
        Rational v = abs(f.coeff(n));
        if (!min_in || v < *min_in) min_in = v;
    }
    Rational max_out = 0;
    for (auto& [n, v] : f.entries())
        if (!A.contains(n)) max_out = std::max(max_out, abs(v));
    return *min_in >= max_out;
}

/**
 * Streams the greedy subsets of supp(f), deterministically: the empty set,
 * then per boundary level in decreasing-modulus order, per subset size, the
 * size-s member combinations in lexicographic order. A size-restricted
 * enumerator visits only the sets of the requested cardinality.
 */
class GreedySetEnumerator {
  public:
    explicit GreedySetEnumerator(const FinSeq& f)
        : family_(f), fixed_size_(false) {}
    GreedySetEnumerator(const FinSeq& f, std::size_t m)
        : family_(f), fixed_size_(true), size_(m) {
        if (m > family_.support_size())
            throw validation_error("size exceeds support");
    }

    std::optional<IndexSet> next() {
        if (done_) return std::nullopt;
        if (!started_) {
            started_ = true;
            if (!fixed_size_ || size_ == 0) {
                done_ = fixed_size_ || family_.level_count() == 0;
                return IndexSet();
            }
            seek_boundary();
            return current();
        }
        if (level_ == npos) {
            // All-sets mode, only the empty set emitted so far.
            level_ = 0;
            subset_size_ = 1;
            reset_combination();
            return current();
        }
        if (advance_combination()) return current();
        if (!fixed_size_ && advance_shape()) return current();
        done_ = true;
        return std::nullopt;
    }

    const GreedyFamily& family() const { return family_; }

  private:
    // Fixed-size mode: position the cursor at the unique boundary level.
    // The first level l with size_ <= |prefix(l+1)| leaves a remainder in
    // [1, |level l|], so the combination below is well formed.
    void seek_boundary() {
        std::size_t taken = 0;
        for (std::size_t l = 0; l < family_.level_count(); ++l) {
            std::size_t m = family_.levels()[l].members.size();
            if (size_ <= taken + m) {
                level_ = l;
                subset_size_ = size_ - taken;
                reset_combination();
                return;
            }
            taken += m;
        }
    }

    // All-sets mode: next (level, size) shape, sizes 1..|level| per level.
    bool advance_shape() {
        if (subset_size_ < family_.levels()[level_].members.size())
            ++subset_size_;
        else if (level_ + 1 < family_.level_count()) {
            ++level_;
            subset_size_ = 1;
        } else {
            return false;
        }
        reset_combination();
        return true;
    }

    void reset_combination() {
        comb_.resize(subset_size_);
        for (std::size_t i = 0; i < subset_size_; ++i) comb_[i] = i;
    }

    bool advance_combination() {
        std::size_t m = family_.levels()[level_].members.size();
        std::size_t i = subset_size_;
        while (i-- > 0) {
            if (comb_[i] < m - (subset_size_ - i)) {
                ++comb_[i];
                for (std::size_t j = i + 1; j < subset_size_; ++j)
                    comb_[j] = comb_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

    IndexSet current() const {
        const auto& members = family_.levels()[level_].members.values();
        std::vector<Index> xs(family_.prefix(level_).values());
        for (std::size_t i : comb_) xs.push_back(members[i]);
        return IndexSet(std::move(xs));
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    GreedyFamily family_;
    bool fixed_size_ = false;
    std::size_t size_ = 0;
    bool started_ = false;
    bool done_ = false;
    std::size_t level_ = npos;
    std::size_t subset_size_ = 0;
    std::vector<std::size_t> comb_;
};

inline constexpr std::size_t kGreedyEnumerationCap = 1'000'000;

/// All greedy subsets of supp(f) of cardinality m, materialized.
inline std::vector<IndexSet> greedy_sets_of_size(
    const FinSeq& f, std::size_t m, std::size_t cap = kGreedyEnumerationCap) {
    GreedySetEnumerator en(f, m);  // validates m against the support
    if (en.family().count_of_size(m) > Int(cap))
        throw cap_exceeded("greedy set enumeration exceeds cap");
    std::vector<IndexSet> out;
    while (auto A = en.next()) out.push_back(std::move(*A));
    return out;
}

/// Every greedy subset of supp(f), materialized.
inline std::vector<IndexSet> all_greedy_sets(
    const FinSeq& f, std::size_t cap = kGreedyEnumerationCap) {
    GreedySetEnumerator en(f);
    if (en.family().count_all() > Int(cap))
        throw cap_exceeded("greedy set enumeration exceeds cap");
    std::vector<IndexSet> out;
    while (auto A = en.next()) out.push_back(std::move(*A));
    return out;
}

/// Maximum-by-inclusion greedy set of f contained in [1,k]. The union of all
/// greedy sets inside the window is again greedy, so the maximum is the full
/// prefix of levels lying inside the window plus the first level that sticks
/// out, clipped to the window.
inline IndexSet max_greedy_within(const FinSeq& f, Index k) {
    if (k < 1) throw validation_error("window bound must be >= 1");
    GreedyFamily fam(f);
    IndexSet window = IndexSet::interval(IntInterval(1, k));
    for (std::size_t l = 0; l < fam.level_count(); ++l)
        if (!fam.levels()[l].members.subset_of(window))
            return fam.prefix(l).unite(fam.levels()[l].members.intersect(window));
    return fam.support();
}

inline FinSeq tga_residual(const FinSeq& f, const IndexSet& A) {
    if (!is_greedy_set(f, A)) throw validation_error("not a greedy set");
    return f - f.project(A);
}

}  // namespace greedylab
