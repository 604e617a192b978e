#include <greedylab/sequences.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace greedylab;

namespace {

FinSeq random_seq(std::mt19937_64& rng, Index max_index = 12) {
    std::uniform_int_distribution<Index> idx(1, max_index);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 6);
    std::uniform_int_distribution<int> count(0, 8);
    FinSeq f;
    int n = count(rng);
    for (int i = 0; i < n; ++i)
        f = f + FinSeq({{idx(rng), Rational(num(rng), den(rng))}});
    return f;
}

IndexSet random_set(std::mt19937_64& rng, Index max_index = 12) {
    std::uniform_int_distribution<Index> idx(1, max_index);
    std::uniform_int_distribution<int> count(0, 6);
    std::vector<Index> xs;
    int n = count(rng);
    for (int i = 0; i < n; ++i) xs.push_back(idx(rng));
    return IndexSet(std::move(xs));
}

Rational dec_at(const FinSeq& f, std::size_t m) {
    auto d = f.dec_rearrangement();
    return m >= 1 && m <= d.size() ? d[m - 1] : Rational(0);
}

}  // namespace

TEST_CASE("coeff reads entries and returns zero off support") {
    FinSeq f = FinSeq::dense({3, 1, 2});
    CHECK(f.coeff(3) == 2);
    CHECK(f.coeff(7) == 0);
    CHECK(FinSeq().coeff(1) == 0);
}

TEST_CASE("sum_over adds the selected coordinates") {
    FinSeq f = FinSeq::dense({3, 1, 2});
    CHECK(f.sum_over(IndexSet{1, 3}) == 5);
    FinSeq g = FinSeq::dense({4, -3, 2, -1});
    CHECK(g.sum_over(IndexSet{2, 4}) == -4);
    CHECK(g.sum_over(IndexSet{}) == 0);
}

TEST_CASE("project restricts the support") {
    FinSeq f = FinSeq::dense({3, 1, 2});
    FinSeq p = f.project(IndexSet{2});
    CHECK(p == FinSeq({{2, Rational(1)}}));
    CHECK(f.project(IndexSet{1, 2, 3, 9}) == f);
    CHECK(f.project(IndexSet{}).is_zero());
    CHECK(p.support() == IndexSet{2});
}

TEST_CASE("multiply flips signs pointwise") {
    FinSeq f = FinSeq::dense({4, 3, 2, 1});
    SignVector tau;
    tau.set(2, -1).set(4, -1);
    CHECK(f.multiply(tau) == FinSeq::dense({4, -3, 2, -1}));
}

TEST_CASE("permute relocates entries") {
    FinSeq f = FinSeq::dense({1, 2});
    CHECK(f.permute(Permutation()) == f);
    Permutation pi({{1, 2}, {2, 5}});
    FinSeq moved = f.permute(pi);
    CHECK(moved.coeff(2) == 1);
    CHECK(moved.coeff(5) == 2);
    CHECK(moved.support_size() == 2);
}

TEST_CASE("permute rejects maps that are not injective where it matters") {
    CHECK_THROWS_AS(Permutation({{1, 3}, {2, 3}}), validation_error);
    // The stored map is injective but sends 1 onto an untouched support point.
    FinSeq f = FinSeq::dense({1, 2});
    CHECK_THROWS_AS(f.permute(Permutation(std::map<Index, Index>{{1, 2}})),
                    validation_error);
}

TEST_CASE("dec_rearrangement sorts moduli nonincreasingly") {
    CHECK(FinSeq::dense({3, 1, 2}).dec_rearrangement() ==
          std::vector<Rational>{3, 2, 1});
    CHECK(FinSeq().dec_rearrangement().empty());
    CHECK(FinSeq::dense({1, -1, 1, -1}).dec_rearrangement() ==
          std::vector<Rational>{1, 1, 1, 1});
}

TEST_CASE("signed_indicator places unit entries") {
    CHECK(FinSeq::indicator(IndexSet{1, 2, 3}) == FinSeq::dense({1, 1, 1}));
    SignVector eps;
    eps.set(2, -1);
    CHECK(FinSeq::signed_indicator(eps, IndexSet{1, 2}) == FinSeq::dense({1, -1}));
    CHECK(FinSeq::signed_indicator(eps, IndexSet{}).is_zero());
}

TEST_CASE("sequence constructor normalizes and validates") {
    CHECK(FinSeq({{3, Rational(0)}, {1, Rational(2)}}) == FinSeq({{1, Rational(2)}}));
    CHECK_THROWS_AS(FinSeq({{0, Rational(1)}}), validation_error);
    CHECK_THROWS_AS(FinSeq({{2, Rational(1)}, {2, Rational(3)}}), validation_error);
    CHECK_THROWS_AS(IntInterval(4, 2), validation_error);
    CHECK(IntInterval().empty());
}

TEST_CASE("indicator-sum identity holds exactly") {
    std::mt19937_64 rng(20260817u);
    for (int trial = 0; trial < 400; ++trial) {
        FinSeq f = random_seq(rng), g = random_seq(rng);
        IndexSet A = random_set(rng), B = random_set(rng), D = random_set(rng);
        FinSeq s = f + g;
        Rational lhs = s.sum_over(A) - f.sum_over(B) - g.sum_over(D);
        Rational rhs = f.sum_over(A.unite(D).minus(B)) +
                       g.sum_over(A.unite(B).minus(D)) -
                       s.sum_over(B.unite(D).minus(A));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("rearrangement of a sum is subadditive across split ranks") {
    std::mt19937_64 rng(7u);
    for (int trial = 0; trial < 200; ++trial) {
        FinSeq f = random_seq(rng), g = random_seq(rng);
        FinSeq s = f + g;
        std::size_t reach = s.support_size() + 2;
        for (std::size_t m = 1; m <= reach; ++m)
            for (std::size_t n = 1; m + n <= reach + 1; ++n)
                REQUIRE(dec_at(s, m + n) <= dec_at(f, m) + dec_at(g, n));
    }
}

TEST_CASE("rearrangement ignores signs and relabeling") {
    std::mt19937_64 rng(99u);
    for (int trial = 0; trial < 200; ++trial) {
        FinSeq f = random_seq(rng);
        SignVector tau;
        std::map<Index, Index> shuffled;
        std::vector<Index> targets;
        for (Index n = 1; n <= 12; ++n) targets.push_back(n + 20);
        std::shuffle(targets.begin(), targets.end(), rng);
        for (Index n = 1; n <= 12; ++n) {
            if (rng() & 1u) tau.set(n, -1);
            shuffled[n] = targets[static_cast<std::size_t>(n - 1)];
        }
        FinSeq moved = f.multiply(tau).permute(Permutation(shuffled));
        REQUIRE(moved.dec_rearrangement() == f.dec_rearrangement());
    }
}

TEST_CASE("projection composes with indicator sums") {
    std::mt19937_64 rng(123u);
    for (int trial = 0; trial < 300; ++trial) {
        FinSeq f = random_seq(rng);
        IndexSet A = random_set(rng), B = random_set(rng);
        REQUIRE(f.project(A).sum_over(B) == f.sum_over(A.intersect(B)));
    }
}

TEST_CASE("sequence arithmetic behaves like coordinatewise algebra") {
    std::mt19937_64 rng(5u);
    for (int trial = 0; trial < 200; ++trial) {
        FinSeq f = random_seq(rng), g = random_seq(rng);
        FinSeq s = f + g;
        for (Index n = 1; n <= 14; ++n)
            REQUIRE(s.coeff(n) == f.coeff(n) + g.coeff(n));
        REQUIRE((f - f).is_zero());
        REQUIRE(f.scale(Rational(-3, 2)) + f.scale(Rational(3, 2)) == FinSeq());
    }
}
