#pragma once

#include "democracy.hpp"
#include "simplex.hpp"

#include <map>
#include <string>
#include <vector>

namespace greedylab {

/// A certified norm-one functional on the chosen combined space, used as an
/// envelope lower-bound witness. Interval sums are contractive only against
/// the interval gauge, the greedy sum only against the greedy-sum gauge, and
/// coordinates against every ambient norm (|a_n| never exceeds the largest
/// rearrangement value).
struct DualFunctional {
    enum class Kind { IntervalSum, Coordinate, GreedySum };
    Kind kind = Kind::Coordinate;
    IntInterval interval;  // IntervalSum payload
    Index coord = 1;       // Coordinate payload

    static DualFunctional interval_sum(const IntInterval& I) {
        DualFunctional d;
        d.kind = Kind::IntervalSum;
        d.interval = I;
        return d;
    }
    static DualFunctional coordinate(Index n) {
        DualFunctional d;
        d.kind = Kind::Coordinate;
        d.coord = n;
        return d;
    }
    static DualFunctional greedy_sum() {
        DualFunctional d;
        d.kind = Kind::GreedySum;
        return d;
    }

    Rational apply(const FinSeq& f) const {
        switch (kind) {
            case Kind::IntervalSum: return f.sum_over(interval);
            case Kind::Coordinate: return f.coeff(coord);
            case Kind::GreedySum: return sigma_g(f);
        }
        return 0;
    }

    std::string str() const {
        switch (kind) {
            case Kind::IntervalSum:
                return "interval[" + std::to_string(interval.lo) + "," +
                       std::to_string(interval.hi) + "]";
            case Kind::Coordinate: return "coordinate[" + std::to_string(coord) + "]";
            case Kind::GreedySum: return "greedy-sum";
        }
        return "";
    }
};

struct Atom {
    FinSeq vector;
    NormValue norm;
};

/// Finite atom family for decomposition upper bounds; closed under negation
/// so the LP cone contains every signed combination.
class Dictionary {
  public:
    Dictionary() = default;

    void add(const FinSeq& v, const NormValue& norm) {
        if (v.is_zero()) throw validation_error("dictionary atoms must be nonzero");
        if (!contains(v)) atoms_.push_back({v, norm});
        if (!contains(-v)) atoms_.push_back({-v, norm});
    }
    void add(const FinSeq& v, const NormSelector& sel) { add(v, evaluate(sel, v)); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    void merge(const Dictionary& o) {
        for (auto& a : o.atoms_)
            if (!contains(a.vector)) atoms_.push_back(a);
    }

  private:
    bool contains(const FinSeq& v) const {
        for (auto& a : atoms_)
            if (a.vector == v) return true;
        return false;
    }
    std::vector<Atom> atoms_;
};

namespace detail {

inline bool is_b_type(const NormSelector& sel) {
    return sel.kind == SelectorKind::B || sel.kind == SelectorKind::BCombined;
}
inline bool is_a_type(const NormSelector& sel) {
    return sel.kind == SelectorKind::A || sel.kind == SelectorKind::ACombined;
}

/// Envelope arithmetic stays exact only when atom norms are rational.
inline void require_exact_space(const NormSelector& sel) {
    bool combined = sel.kind == SelectorKind::BCombined ||
                    sel.kind == SelectorKind::ACombined;
    if (!combined)
        throw validation_error("envelope bounds need a combined space selector");
    if (!sel.space.inf && sel.space.q >= 2)
        throw validation_error("envelope bounds stay exact only for q in {1,inf}");
}

}  // namespace detail

inline void validate_dual_pairing(const DualFunctional& phi, const NormSelector& sel) {
    switch (phi.kind) {
        case DualFunctional::Kind::IntervalSum:
            if (!detail::is_b_type(sel))
                throw validation_error(
                    "interval-sum functionals certify only interval-gauge spaces");
            return;
        case DualFunctional::Kind::GreedySum:
            if (!detail::is_a_type(sel))
                throw validation_error(
                    "greedy-sum functionals certify only greedy-sum-gauge spaces");
            return;
        case DualFunctional::Kind::Coordinate: return;
    }
}

/// Interval sums with both endpoints in supp(f) plus the coordinates of
/// supp(f); the greedy sum joins for the greedy-sum-gauge side. No other
/// functionals carry a norm-one certificate.
inline std::vector<DualFunctional> default_dual_family(const FinSeq& f,
                                                       const NormSelector& sel) {
    std::vector<DualFunctional> fam;
    IndexSet support = f.support();
    const auto& supp = support.values();
    for (Index n : supp) fam.push_back(DualFunctional::coordinate(n));
    if (detail::is_b_type(sel))
        for (std::size_t i = 0; i < supp.size(); ++i)
            for (std::size_t j = i; j < supp.size(); ++j)
                fam.push_back(
                    DualFunctional::interval_sum(IntInterval(supp[i], supp[j])));
    if (detail::is_a_type(sel)) fam.push_back(DualFunctional::greedy_sum());
    if (fam.empty()) fam.push_back(DualFunctional::coordinate(1));
    return fam;
}

inline std::pair<Rational, DualFunctional> lower_bound(
    const FinSeq& f, const NormSelector& sel,
    const std::vector<DualFunctional>& family) {
    if (family.empty()) throw validation_error("dual family is empty");
    Rational best = -1;
    DualFunctional witness;
    for (const auto& phi : family) {
        validate_dual_pairing(phi, sel);
        Rational v = abs(phi.apply(f));
        if (v > best) {
            best = v;
            witness = phi;
        }
    }
    return {best, witness};
}

struct UpperCertificate {
    std::vector<std::pair<Rational, Atom>> decomposition;  // positive weights
    bool optimal = true;
    std::size_t iterations = 0;
};

/// Least decomposition cost of f over the dictionary cone: minimize the
/// weighted atom norms subject to the weighted atoms reproducing f exactly.
inline std::pair<NormValue, UpperCertificate> upper_bound(
    const FinSeq& f, const NormSelector& sel, const Dictionary& dict,
    std::size_t iteration_cap = 100'000) {
    detail::require_exact_space(sel);

    IndexSet rows_set = f.support();
    for (auto& a : dict.atoms()) rows_set = rows_set.unite(a.vector.support());
    const auto& rows = rows_set.values();

    std::vector<std::vector<Rational>> A(rows.size(),
                                         std::vector<Rational>(dict.size()));
    std::vector<Rational> b(rows.size()), c(dict.size());
    for (std::size_t j = 0; j < dict.size(); ++j) {
        const Atom& atom = dict.atoms()[j];
        c[j] = atom.norm.exact_value();
        for (std::size_t i = 0; i < rows.size(); ++i)
            A[i][j] = atom.vector.coeff(rows[i]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = f.coeff(rows[i]);

    LpResult lp = solve_lp_min(std::move(A), std::move(b), std::move(c),
                               iteration_cap);
    UpperCertificate cert;
    cert.optimal = lp.optimal;
    cert.iterations = lp.iterations;
    for (std::size_t j = 0; j < dict.size(); ++j)
        if (lp.solution[j] > 0)
            cert.decomposition.emplace_back(lp.solution[j], dict.atoms()[j]);
    return {NormValue::exact(lp.value), std::move(cert)};
}

struct CyclicFamily {
    Dictionary dict;
    Rational s_m;  // seed mass over the window, the natural weight scale
};

inline FinSeq harmonic_seed(std::size_t m) {
    std::vector<FinSeq::Entry> es;
    for (std::size_t n = 1; n <= m; ++n)
        es.emplace_back(static_cast<Index>(n), Rational(1, static_cast<long long>(n)));
    return FinSeq(std::move(es));
}

/**
 * The alternating cyclic family: rotate the seed around the window [1, m]
 * and twist with the alternating sign pattern. These 2m atoms average to a
 * multiple of the window indicator, which is what makes them a useful
 * decomposition dictionary for signed indicators.
 */
inline CyclicFamily cyclic_dictionary(std::size_t m, const FinSeq& seed,
                                      const NormSelector& sel) {
    if (m < 1) throw validation_error("cyclic window must be nonempty");
    Rational prev;
    for (std::size_t n = 1; n <= m; ++n) {
        Rational v = seed.coeff(static_cast<Index>(n));
        if (v <= 0) throw validation_error("cyclic seed must be positive on the window");
        if (n > 1 && v > prev)
            throw validation_error("cyclic seed must be nonincreasing on the window");
        prev = v;
    }
    FinSeq base = seed.project(IntInterval(1, static_cast<Index>(m)));
    SignVector tau = SignVector::alternating(IntInterval(1, static_cast<Index>(m)));
    CyclicFamily fam;
    fam.s_m = base.total();
    std::map<Index, Index> rot;
    for (std::size_t n = 1; n <= m; ++n)
        rot[static_cast<Index>(n)] = static_cast<Index>(n % m + 1);
    Permutation step(rot);
    FinSeq rotated = base;
    for (std::size_t k = 0; k < m; ++k) {
        fam.dict.add(rotated.multiply(tau), sel);
        rotated = rotated.permute(step);
    }
    return fam;
}

inline CyclicFamily cyclic_dictionary(std::size_t m, const NormSelector& sel) {
    return cyclic_dictionary(m, harmonic_seed(m), sel);
}

struct EnvelopeConfig {
    bool coordinate_atoms = true;
    bool interval_pieces = true;
    std::size_t cyclic_m = 0;  // 0 = no cyclic family
    std::vector<FinSeq> user_atoms;
    std::size_t lp_iteration_cap = 100'000;
};

struct EnvelopeBound {
    Rational lower;
    DualFunctional lower_cert;
    NormValue upper;
    UpperCertificate upper_cert;
};

/// Two-sided certified interval around the convexification norm of f.
inline EnvelopeBound envelope_interval(const FinSeq& f, const NormSelector& sel,
                                       const EnvelopeConfig& config = {}) {
    detail::require_exact_space(sel);
    Dictionary dict;
    if (config.coordinate_atoms)
        for (Index n : f.support())
            dict.add(FinSeq::unit(n), sel);
    if (config.interval_pieces) {
        IndexSet support = f.support();
        const auto& supp = support.values();
        for (std::size_t i = 0; i < supp.size(); ++i)
            for (std::size_t j = i; j < supp.size(); ++j)
                dict.add(f.project(IntInterval(supp[i], supp[j])), sel);
    }
    if (config.cyclic_m > 0) dict.merge(cyclic_dictionary(config.cyclic_m, sel).dict);
    for (auto& v : config.user_atoms) dict.add(v, sel);

    EnvelopeBound out;
    auto [low, cert] = lower_bound(f, sel, default_dual_family(f, sel));
    out.lower = low;
    out.lower_cert = cert;
    auto [up, ucert] = upper_bound(f, sel, dict, config.lp_iteration_cap);
    out.upper = up;
    out.upper_cert = std::move(ucert);
    return out;
}

}  // namespace greedylab
