#include <greedylab/democracy.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace greedylab;

namespace {

// Definitional democracy functions: scan every signed indicator with support
// inside [1, window].
struct BruteProfile {
    std::vector<NormValue> lower, upper;
};

BruteProfile brute_profile(const NormSelector& sel, std::size_t m_max,
                           std::size_t window) {
    BruteProfile out;
    std::vector<std::pair<std::size_t, NormValue>> by_size;  // (|A|, norm)
    for (unsigned mask = 1; mask < (1u << window); ++mask) {
        std::vector<Index> xs;
        for (std::size_t n = 1; n <= window; ++n)
            if (mask & (1u << (n - 1))) xs.push_back(static_cast<Index>(n));
        IndexSet A(std::move(xs));
        std::size_t sz = A.size();
        for (unsigned signs = 0; signs < (1u << sz); ++signs) {
            SignVector eps;
            std::size_t bit = 0;
            for (Index n : A)
                if (signs & (1u << bit++)) eps.set(n, -1);
            by_size.emplace_back(sz, evaluate(sel, FinSeq::signed_indicator(eps, A)));
        }
    }
    for (std::size_t m = 1; m <= m_max; ++m) {
        std::optional<NormValue> up, low;
        for (auto& [sz, v] : by_size) {
            if (sz <= m && (!up || *up < v)) up = v;
            if (sz >= m && (!low || v < *low)) low = v;
        }
        out.upper.push_back(*up);
        out.lower.push_back(*low);
    }
    return out;
}

}  // namespace

TEST_CASE("selector parsing round-trips") {
    for (const char* text : {"B", "A", "lorentz:1", "lorentz:2", "lorentz:inf",
                             "B-comb:lorentz:inf", "A-comb:lorentz:3"}) {
        NormSelector sel = NormSelector::parse(text);
        CHECK(sel.str() == text);
    }
    CHECK(NormSelector::parse("lorentz:inf").kind == SelectorKind::Lorentz);
    CHECK(NormSelector::parse("A-comb:lorentz:2").space == SpaceSpec::lorentz(2));
    CHECK_THROWS_AS(NormSelector::parse("C"), validation_error);
    CHECK_THROWS_AS(NormSelector::parse("lorentz:0"), validation_error);
    CHECK_THROWS_AS(NormSelector::parse("B-comb:lorentz:x"), validation_error);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(democracy_profile(NormSelector::parse("B"), 5, 4),
                    validation_error);
    CHECK_THROWS_AS(democracy_profile(NormSelector::parse("B"), 0, 4),
                    validation_error);
}

TEST_CASE("frozen democracy examples") {
    auto weak = democracy_profile(NormSelector::parse("lorentz:inf"), 6, 8);
    for (std::size_t m = 1; m <= 6; ++m)
        CHECK(weak.upper[m - 1] == NormValue::exact(Rational(m)));

    SignVector alt = SignVector::alternating(IntInterval(1, 4));
    FinSeq f = FinSeq::signed_indicator(alt, IndexSet::interval(IntInterval(1, 4)));
    CHECK(norm_B(f) == 2);

    auto comb = democracy_profile(NormSelector::parse("B-comb:lorentz:inf"), 6, 8);
    for (std::size_t m = 1; m <= 6; ++m) {
        CHECK(comb.lower[m - 1] == NormValue::exact(Rational(m)));
        CHECK(comb.upper[m - 1] == NormValue::exact(Rational(m)));
    }
}

TEST_CASE("closed forms agree with the definitional scan") {
    for (const char* text : {"B", "A", "lorentz:1", "lorentz:2", "lorentz:inf",
                             "B-comb:lorentz:inf", "B-comb:lorentz:2",
                             "A-comb:lorentz:inf", "A-comb:lorentz:3"}) {
        NormSelector sel = NormSelector::parse(text);
        auto prof = democracy_profile(sel, 5, 7);
        auto brute = brute_profile(sel, 5, 7);
        for (std::size_t m = 1; m <= 5; ++m) {
            INFO(text << " at m=" << m);
            REQUIRE(prof.upper[m - 1] == brute.upper[m - 1]);
            REQUIRE(prof.lower[m - 1] == brute.lower[m - 1]);
        }
    }
}

TEST_CASE("profiles are well formed and witnessed") {
    for (const char* text : {"B", "A", "lorentz:2", "B-comb:lorentz:inf"}) {
        NormSelector sel = NormSelector::parse(text);
        auto prof = democracy_profile(sel, 8, 12);
        for (std::size_t m = 1; m <= 8; ++m) {
            REQUIRE(prof.lower[m - 1] <= prof.upper[m - 1]);
            if (m > 1) REQUIRE(prof.upper[m - 2] <= prof.upper[m - 1]);
            // Witness values realize the reported bounds.
            auto& uw = prof.upper_witness[m - 1];
            auto& lw = prof.lower_witness[m - 1];
            REQUIRE(evaluate(sel, FinSeq::signed_indicator(uw.signs, uw.set)) ==
                    prof.upper[m - 1]);
            REQUIRE(evaluate(sel, FinSeq::signed_indicator(lw.signs, lw.set)) ==
                    prof.lower[m - 1]);
        }
    }
}
