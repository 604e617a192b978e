#pragma once

#include "rational.hpp"

#include <optional>
#include <vector>

namespace greedylab {

/// Thrown when a linear program has no feasible point.
struct lp_infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LpResult {
    bool optimal = false;  // false when the iteration cap stopped phase 2
    Rational value;
    std::vector<Rational> solution;
    std::size_t iterations = 0;
};

/**
 * Exact dense two-phase simplex for min c.x s.t. Ax = b, x >= 0.
 *
 * Bland's smallest-index rule on both the entering and the leaving choice,
 * so the walk cannot cycle; termination is then a counting argument over
 * bases. All arithmetic is exact, so the returned value and solution are
 * exact. Hitting the iteration cap inside phase 2 returns the incumbent
 * basic feasible point flagged non-optimal; hitting it inside phase 1 is an
 * enumeration failure, reported as cap_exceeded.
 *
 * The tableau is held fraction-free: rows are scaled to integers up front
 * and the whole tableau shares one positive denominator den_, the scaled
 * determinant of the current basis. A pivot on (r, c) maps entry x to
 * (T[r][c]*x - T[i][c]*T[r][j]) / den_ and leaves row r untouched; every
 * intermediate value is a minor of the integer input (Cramer), so the
 * division is exact and no gcd normalization ever runs. Entry sizes stay
 * bounded by minors of the input instead of drifting, which is what makes
 * harmonic-denominator dictionaries tractable. Reduced-cost rows for both
 * phases ride along in the same representation, so entering selection is a
 * sign scan. Artificial columns are dropped as soon as they leave the basis;
 * after phase 1 the whole artificial block goes dead.
 */
class SimplexSolver {
  public:
    SimplexSolver(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                  std::vector<Rational> c, std::size_t iteration_cap = 100'000)
        : rows_(A.size()), cols_(c.size()), cap_(iteration_cap), cost_(std::move(c)) {
        if (b.size() != rows_) throw validation_error("LP row count mismatch");
        for (auto& row : A)
            if (row.size() != cols_) throw validation_error("LP column count mismatch");
        std::size_t width = cols_ + rows_ + 1;
        tab_.assign(rows_, std::vector<Int>(width, Int(0)));
        basis_.resize(rows_);
        alive_.assign(cols_ + rows_, true);
        // Row scaling: clear denominators and flip negative right-hand sides,
        // then append the identity artificial block. Scaling a constraint by
        // a positive constant changes nothing; the starting basis determinant
        // is then exactly 1.
        for (std::size_t i = 0; i < rows_; ++i) {
            Int scale = denominator(b[i]);
            for (std::size_t j = 0; j < cols_; ++j)
                scale = lcm(scale, denominator(A[i][j]));
            if (b[i] < 0) scale = -scale;
            for (std::size_t j = 0; j < cols_; ++j)
                tab_[i][j] = numerator(A[i][j]) * (scale / denominator(A[i][j]));
            tab_[i][cols_ + i] = 1;
            tab_[i].back() = numerator(b[i]) * (scale / denominator(b[i]));
            basis_[i] = cols_ + i;
        }
        // Reduced-cost rows under the all-artificial basis. Phase 1 prices
        // every artificial at 1, so the entry is -(column sum); phase 2
        // prices artificials at 0 and originals at the objective, cleared of
        // denominators (a positive overall factor, signs are all that phase
        // scans read).
        zrow1_.assign(width, Int(0));
        zrow2_.assign(width, Int(0));
        Int obj_scale = 1;
        for (std::size_t j = 0; j < cols_; ++j)
            obj_scale = lcm(obj_scale, denominator(cost_[j]));
        for (std::size_t j = 0; j < cols_; ++j) {
            for (std::size_t i = 0; i < rows_; ++i) zrow1_[j] -= tab_[i][j];
            zrow2_[j] = numerator(cost_[j]) * (obj_scale / denominator(cost_[j]));
        }
    }

    LpResult solve() {
        run_phase(true);
        Int infeas = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_) infeas += tab_[i].back();
        if (infeas != 0) throw lp_infeasible("dictionary does not span target");
        expel_artificials();
        artificials_dead_ = true;
        bool finished = run_phase(false);
        LpResult r;
        r.optimal = finished;
        r.solution.assign(cols_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) r.solution[basis_[i]] = Rational(tab_[i].back(), den_);
        for (std::size_t j = 0; j < cols_; ++j) r.value += cost_[j] * r.solution[j];
        r.iterations = iterations_;
        return r;
    }

  private:
    // One phase of Bland pivoting; true when optimality was reached. den_ is
    // positive, so stored signs are true signs, and basic columns carry
    // reduced cost exactly 0, so the sign scan never picks one.
    bool run_phase(bool phase1) {
        const std::vector<Int>& zrow = phase1 ? zrow1_ : zrow2_;
        std::size_t limit = phase1 ? cols_ + rows_ : cols_;
        while (true) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < limit && !enter; ++j)
                if (alive_[j] && zrow[j] < 0) enter = j;
            if (!enter) return true;
            std::optional<std::size_t> leave;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tab_[i][*enter] <= 0) continue;
                if (!leave) {
                    leave = i;
                    continue;
                }
                Int cur = tab_[i].back() * tab_[*leave][*enter];
                Int best = tab_[*leave].back() * tab_[i][*enter];
                if (cur < best || (cur == best && basis_[i] < basis_[*leave]))
                    leave = i;
            }
            if (!leave) throw std::runtime_error("LP is unbounded");
            if (++iterations_ > cap_) {
                if (phase1)
                    throw cap_exceeded("simplex iteration cap hit before feasibility");
                return false;
            }
            pivot(*leave, *enter);
        }
    }

    // Fraction-free pivot. Row r keeps its entries and the shared
    // denominator becomes the old pivot entry; every other row, the
    // reduced-cost rows included, takes the two-term update and divides out
    // the old denominator, exactly. Rows unhit by the pivot column still
    // rescale: the shared denominator changed under them.
    void pivot(std::size_t r, std::size_t c) {
        Int p = tab_[r][c];
        auto combine = [&](std::vector<Int>& row) {
            Int f = row[c];
            if (f == 0) {
                for (std::size_t j = 0; j < cols_ + rows_; ++j)
                    if (alive(j)) row[j] = p * row[j] / den_;
                row.back() = p * row.back() / den_;
            } else {
                const std::vector<Int>& pr = tab_[r];
                for (std::size_t j = 0; j < cols_ + rows_; ++j)
                    if (alive(j)) row[j] = (p * row[j] - f * pr[j]) / den_;
                row.back() = (p * row.back() - f * pr.back()) / den_;
            }
        };
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r) combine(tab_[i]);
        if (!artificials_dead_) combine(zrow1_);
        combine(zrow2_);
        // A pivot out of phase pivoting has p > 0 (the ratio test filters for
        // it); expel_artificials can pivot on a negative entry, which flips
        // the sign of the basis determinant. Negating everything restores
        // den_ > 0 without changing any represented value.
        if ((den_ = p) < 0) {
            den_ = -den_;
            for (auto& row : tab_)
                for (auto& v : row) v = -v;
            for (auto& v : zrow1_) v = -v;
            for (auto& v : zrow2_) v = -v;
        }
        // Once an artificial leaves the basis it is never allowed back, so
        // its column stops being scanned or updated.
        if (basis_[r] >= cols_) alive_[basis_[r]] = false;
        basis_[r] = c;
    }

    bool alive(std::size_t j) const {
        return j < cols_ ? true : (!artificials_dead_ && alive_[j]);
    }

    // Degenerate artificials left basic after phase 1 either pivot onto an
    // original column or expose a redundant (all-zero) row, which is inert.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (tab_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::size_t rows_, cols_, cap_;
    std::vector<Rational> cost_;
    std::vector<std::vector<Int>> tab_;
    std::vector<Int> zrow1_, zrow2_;
    Int den_ = 1;
    std::vector<std::size_t> basis_;
    std::vector<bool> alive_;
    std::size_t iterations_ = 0;
    bool artificials_dead_ = false;
};

inline LpResult solve_lp_min(std::vector<std::vector<Rational>> A,
                             std::vector<Rational> b, std::vector<Rational> c,
                             std::size_t iteration_cap = 100'000) {
    return SimplexSolver(std::move(A), std::move(b), std::move(c), iteration_cap)
        .solve();
}

/**
 * Definitional cross-check for small programs: every vertex of the feasible
 * polyhedron is a basic solution, so enumerating independent column subsets
 * and keeping the nonnegative consistent ones sweeps all vertices. Returns
 * the minimum objective over vertices, or nothing when no subset yields a
 * feasible basic point (for bounded feasible programs that means infeasible).
 */
inline std::optional<Rational> lp_vertex_oracle(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    const std::vector<Rational>& c) {
    std::size_t rows = A.size(), cols = c.size();
    std::optional<Rational> best;

    // Zero b with the empty subset counts as a vertex.
    bool zero_b = true;
    for (auto& v : b) zero_b = zero_b && v == 0;
    if (zero_b) best = Rational(0);

    std::size_t kmax = std::min(rows, cols);
    std::vector<std::size_t> pick;
    auto try_subset = [&](const std::vector<std::size_t>& S) {
        // Solve A_S x = b by exact elimination on the augmented matrix.
        std::vector<std::vector<Rational>> M(rows,
                                             std::vector<Rational>(S.size() + 1));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < S.size(); ++k) M[i][k] = A[i][S[k]];
            M[i][S.size()] = b[i];
        }
        std::size_t rank = 0;
        std::vector<std::size_t> pivot_col;
        for (std::size_t col = 0; col < S.size() && rank < rows; ++col) {
            std::size_t sel = rank;
            while (sel < rows && M[sel][col] == 0) ++sel;
            if (sel == rows) return;  // dependent columns; a smaller subset covers it
            std::swap(M[sel], M[rank]);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == rank || M[i][col] == 0) continue;
                Rational f = M[i][col] / M[rank][col];
                for (std::size_t j = col; j <= S.size(); ++j)
                    M[i][j] -= f * M[rank][j];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (std::size_t i = rank; i < rows; ++i)
            if (M[i][S.size()] != 0) return;  // inconsistent
        std::vector<Rational> x(S.size(), Rational(0));
        for (std::size_t r = 0; r < rank; ++r) {
            Rational v = M[r][S.size()] / M[r][pivot_col[r]];
            if (v < 0) return;  // not in the nonnegative cone
            x[pivot_col[r]] = v;
        }
        Rational obj = 0;
        for (std::size_t k = 0; k < S.size(); ++k) obj += c[S[k]] * x[k];
        if (!best || obj < *best) best = obj;
    };

    // Enumerate all column subsets of size 1..kmax.
    for (std::size_t k = 1; k <= kmax; ++k) {
        pick.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            try_subset(pick);
            std::size_t i = k;
            bool moved = false;
            while (i-- > 0) {
                if (pick[i] < cols - (k - i)) {
                    ++pick[i];
                    for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
    }
    return best;
}

}  // namespace greedylab
