#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace greedylab {

// Positions are 1-based throughout.
using Index = std::int64_t;

/// Closed integer interval [lo, hi]. The default-constructed value is the
/// empty interval; every explicitly constructed one satisfies lo <= hi.
struct IntInterval {
    Index lo = 1;
    Index hi = 0;

    IntInterval() = default;
    IntInterval(Index l, Index h) : lo(l), hi(h) {
        if (l < 1) throw validation_error("interval endpoints must be >= 1");
        if (h < l) throw validation_error("interval needs lo <= hi");
    }

    bool empty() const { return hi < lo; }
    Index length() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(Index n) const { return lo <= n && n <= hi; }
    bool operator==(const IntInterval& o) const = default;
};

/// Finite set of positions in canonical sorted order.
class IndexSet {
  public:
    IndexSet() = default;
    IndexSet(std::initializer_list<Index> xs) : IndexSet(std::vector<Index>(xs)) {}
    explicit IndexSet(std::vector<Index> xs) : xs_(std::move(xs)) {
        std::sort(xs_.begin(), xs_.end());
        xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
        if (!xs_.empty() && xs_.front() < 1)
            throw validation_error("index sets hold positive integers only");
    }

    static IndexSet interval(const IntInterval& I) {
        std::vector<Index> xs;
        for (Index n = I.lo; n <= I.hi; ++n) xs.push_back(n);
        return IndexSet(std::move(xs));
    }

    bool contains(Index n) const {
        return std::binary_search(xs_.begin(), xs_.end(), n);
    }
    std::size_t size() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }
    const std::vector<Index>& values() const { return xs_; }
    auto begin() const { return xs_.begin(); }
    auto end() const { return xs_.end(); }

    IndexSet unite(const IndexSet& o) const {
        std::vector<Index> out;
        std::set_union(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(),
                       std::back_inserter(out));
        return from_sorted(std::move(out));
    }
    IndexSet intersect(const IndexSet& o) const {
        std::vector<Index> out;
        std::set_intersection(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(),
                              std::back_inserter(out));
        return from_sorted(std::move(out));
    }
    IndexSet minus(const IndexSet& o) const {
        std::vector<Index> out;
        std::set_difference(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(),
                            std::back_inserter(out));
        return from_sorted(std::move(out));
    }
    IndexSet sym_diff(const IndexSet& o) const {
        std::vector<Index> out;
        std::set_symmetric_difference(xs_.begin(), xs_.end(), o.xs_.begin(),
                                      o.xs_.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }
    bool subset_of(const IndexSet& o) const {
        return std::includes(o.xs_.begin(), o.xs_.end(), xs_.begin(), xs_.end());
    }
    bool operator==(const IndexSet& o) const = default;

  private:
    static IndexSet from_sorted(std::vector<Index> xs) {
        IndexSet s;
        s.xs_ = std::move(xs);
        return s;
    }
    std::vector<Index> xs_;  // strictly increasing
};

/// Sign assignment on a finite window; +1 outside the stored positions.
class SignVector {
  public:
    SignVector() = default;

    int at(Index n) const {
        auto it = signs_.find(n);
        return it == signs_.end() ? +1 : it->second;
    }
    SignVector& set(Index n, int s) {
        if (s != 1 && s != -1) throw validation_error("signs are +1 or -1");
        if (s == 1)
            signs_.erase(n);
        else
            signs_[n] = s;
        return *this;
    }

    /// (-1)^(n-1) on [window.lo, window.hi].
    static SignVector alternating(const IntInterval& window) {
        SignVector t;
        for (Index n = window.lo; n <= window.hi; ++n)
            if (n % 2 == 0) t.set(n, -1);
        return t;
    }

  private:
    std::map<Index, int> signs_;  // only -1 entries are stored
};

/// Injective index map; identity off the stored domain.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::map<Index, Index> m) : map_(std::move(m)) {
        std::vector<Index> targets;
        for (auto& [n, v] : map_) {
            if (n < 1 || v < 1)
                throw validation_error("permutation indices must be >= 1");
            targets.push_back(v);
        }
        std::sort(targets.begin(), targets.end());
        if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
            throw validation_error("permutation is not injective on its domain");
    }

    Index at(Index n) const {
        auto it = map_.find(n);
        return it == map_.end() ? n : it->second;
    }
    const std::map<Index, Index>& mapping() const { return map_; }

  private:
    std::map<Index, Index> map_;
};

/**
 * Finitely supported rational sequence.
 *
 * Entries are kept sorted by index and never hold the value zero, so the
 * stored index set is exactly the support. All operations are pure.
 */
class FinSeq {
  public:
    using Entry = std::pair<Index, Rational>;

    FinSeq() = default;
    explicit FinSeq(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        std::vector<Entry> kept;
        kept.reserve(entries_.size());
        for (auto& e : entries_) {
            if (e.first < 1) throw validation_error("sequence indices must be >= 1");
            if (!kept.empty() && kept.back().first == e.first)
                throw validation_error("duplicate sequence index");
            if (e.second != 0) kept.push_back(std::move(e));
        }
        entries_ = std::move(kept);
    }

    /// Convenience: values at positions 1..n.
    static FinSeq dense(std::initializer_list<Rational> values) {
        std::vector<Entry> es;
        Index n = 1;
        for (const auto& v : values) es.emplace_back(n++, v);
        return FinSeq(std::move(es));
    }

    static FinSeq unit(Index n) { return FinSeq({{n, Rational(1)}}); }

    static FinSeq signed_indicator(const SignVector& eps, const IndexSet& A) {
        std::vector<Entry> es;
        for (Index n : A) es.emplace_back(n, Rational(eps.at(n)));
        return FinSeq(std::move(es));
    }
    static FinSeq indicator(const IndexSet& A) {
        return signed_indicator(SignVector(), A);
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    Index max_index() const { return entries_.empty() ? 0 : entries_.back().first; }
    Index min_index() const { return entries_.empty() ? 0 : entries_.front().first; }

    IndexSet support() const {
        std::vector<Index> xs;
        xs.reserve(entries_.size());
        for (auto& [n, v] : entries_) xs.push_back(n);
        return IndexSet(std::move(xs));
    }

    Rational coeff(Index n) const {
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), n,
            [](const Entry& e, Index k) { return e.first < k; });
        if (it != entries_.end() && it->first == n) return it->second;
        return Rational(0);
    }

    Rational sum_over(const IndexSet& A) const {
        Rational s = 0;
        for (auto& [n, v] : entries_)
            if (A.contains(n)) s += v;
        return s;
    }
    Rational sum_over(const IntInterval& I) const {
        Rational s = 0;
        for (auto& [n, v] : entries_)
            if (I.contains(n)) s += v;
        return s;
    }
    Rational total() const {
        Rational s = 0;
        for (auto& [n, v] : entries_) s += v;
        return s;
    }

    FinSeq project(const IndexSet& A) const {
        std::vector<Entry> es;
        for (auto& e : entries_)
            if (A.contains(e.first)) es.push_back(e);
        return from_clean(std::move(es));
    }
    FinSeq project(const IntInterval& I) const {
        std::vector<Entry> es;
        for (auto& e : entries_)
            if (I.contains(e.first)) es.push_back(e);
        return from_clean(std::move(es));
    }

    FinSeq multiply(const SignVector& tau) const {
        std::vector<Entry> es = entries_;
        for (auto& [n, v] : es)
            if (tau.at(n) < 0) v = -v;
        return from_clean(std::move(es));
    }

    /// P applied to this sequence; every support entry moves to its image.
    /// Rejects applications where two entries would land on one position,
    /// which is exactly when the identity extension fails to be injective
    /// on the positions that matter.
    FinSeq permute(const Permutation& pi) const {
        std::vector<Entry> es;
        es.reserve(entries_.size());
        for (auto& [n, v] : entries_) es.emplace_back(pi.at(n), v);
        std::sort(es.begin(), es.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < es.size(); ++i)
            if (es[i].first == es[i - 1].first)
                throw validation_error("permutation collides on the support");
        return from_clean(std::move(es));
    }

    /// Moduli of the support entries, nonincreasing. Implicit zero tail.
    std::vector<Rational> dec_rearrangement() const {
        std::vector<Rational> ms;
        ms.reserve(entries_.size());
        for (auto& [n, v] : entries_) ms.push_back(abs(v));
        std::sort(ms.begin(), ms.end(), std::greater<>());
        return ms;
    }

    FinSeq operator+(const FinSeq& o) const {
        std::vector<Entry> es;
        auto a = entries_.begin(), b = o.entries_.begin();
        while (a != entries_.end() || b != o.entries_.end()) {
            if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first))
                es.push_back(*a++);
            else if (a == entries_.end() || b->first < a->first)
                es.push_back(*b++);
            else {
                Rational v = a->second + b->second;
                if (v != 0) es.emplace_back(a->first, v);
                ++a, ++b;
            }
        }
        return from_clean(std::move(es));
    }
    FinSeq operator-() const {
        std::vector<Entry> es = entries_;
        for (auto& [n, v] : es) v = -v;
        return from_clean(std::move(es));
    }
    FinSeq operator-(const FinSeq& o) const { return *this + (-o); }
    FinSeq scale(const Rational& c) const {
        if (c == 0) return FinSeq();
        std::vector<Entry> es = entries_;
        for (auto& [n, v] : es) v *= c;
        return from_clean(std::move(es));
    }

    bool operator==(const FinSeq& o) const = default;

  private:
    static FinSeq from_clean(std::vector<Entry> es) {
        FinSeq f;
        f.entries_ = std::move(es);
        return f;
    }
    std::vector<Entry> entries_;
};

inline Rational sum_over(const FinSeq& f, const IndexSet& A) { return f.sum_over(A); }
inline FinSeq project(const FinSeq& f, const IndexSet& A) { return f.project(A); }

}  // namespace greedylab
