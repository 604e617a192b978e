#include "greedylab/seqfile.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace greedylab;
using Catch::Matchers::ContainsSubstring;

namespace {

FinSeq random_vector(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size(0, 10);
    std::uniform_int_distribution<Index> step(1, 5);
    std::uniform_int_distribution<long long> num(-40, 40);
    std::uniform_int_distribution<long long> den(1, 12);
    std::vector<FinSeq::Entry> es;
    Index at = 0;
    int k = size(rng);
    for (int i = 0; i < k; ++i) {
        at += step(rng);
        long long p = num(rng);
        if (p == 0) p = 7;
        es.emplace_back(at, Rational(p, den(rng)));
    }
    return FinSeq(std::move(es));
}

}  // namespace

TEST_CASE("line encoding reads pairs, comments, and blank lines") {
    FinSeq f = seq_from_text("# header\n1 1/2\n\n3 -2   # tail note\n10 7/3\n");
    CHECK(f.coeff(1) == Rational(1, 2));
    CHECK(f.coeff(3) == -2);
    CHECK(f.coeff(10) == Rational(7, 3));
    CHECK(f.support_size() == 3);

    CHECK(seq_from_text("").is_zero());
    CHECK(seq_from_text("  \n# only a comment\n").is_zero());
    CHECK(seq_from_text("4 0\n9 0\n").is_zero());
}

TEST_CASE("structured encoding round-trips through the same vector") {
    FinSeq f = seq_from_text(R"({"entries": [[1, "1/2"], [3, "-2"], [10, 4]]})");
    CHECK(f.coeff(1) == Rational(1, 2));
    CHECK(f.coeff(3) == -2);
    CHECK(f.coeff(10) == 4);

    CHECK(seq_to_json(f) == R"({"entries":[[1,"1/2"],[3,"-2"],[10,"4"]]})");
    CHECK(seq_from_text("  \n\t" + seq_to_json(f)) == f);
    CHECK(seq_from_text(R"({"entries": []})").is_zero());
}

TEST_CASE("writers emit canonical lowest terms") {
    FinSeq f({{2, Rational(2, 4)}, {5, Rational(-6, 3)}});
    CHECK(seq_to_lines(f) == "2 1/2\n5 -2\n");
    CHECK(seq_to_json(f) == R"({"entries":[[2,"1/2"],[5,"-2"]]})");
}

TEST_CASE("round-trip identity on random vectors") {
    std::mt19937_64 rng(401u);
    for (int trial = 0; trial < 300; ++trial) {
        FinSeq f = random_vector(rng);
        CHECK(seq_from_text(seq_to_lines(f)) == f);
        CHECK(seq_from_text(seq_to_json(f)) == f);
    }
}

TEST_CASE("malformed line input is rejected with a location") {
    CHECK_THROWS_AS(seq_from_text("1\n"), parse_error);
    CHECK_THROWS_WITH(seq_from_text("1 2 3\n"),
                      ContainsSubstring("trailing token"));
    CHECK_THROWS_WITH(seq_from_text("2 1\n2 3\n"),
                      ContainsSubstring("strictly increasing"));
    CHECK_THROWS_WITH(seq_from_text("5 1\n3 1\n"),
                      ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(seq_from_text("0 1\n"), ContainsSubstring("start at 1"));
    CHECK_THROWS_WITH(seq_from_text("-2 1\n"), ContainsSubstring("bad index"));
    CHECK_THROWS_WITH(seq_from_text("1 x\n"), ContainsSubstring("malformed rational"));
    CHECK_THROWS_WITH(seq_from_text("1 1/0\n"), ContainsSubstring("malformed rational"));
}

TEST_CASE("malformed structured input is rejected") {
    CHECK_THROWS_WITH(seq_from_text("{broken"), ContainsSubstring("bad JSON"));
    CHECK_THROWS_WITH(seq_from_text(R"({"rows": []})"),
                      ContainsSubstring("\"entries\" array"));
    CHECK_THROWS_WITH(seq_from_text(R"({"entries": [[1]]})"),
                      ContainsSubstring("[index, value] pair"));
    CHECK_THROWS_WITH(seq_from_text(R"({"entries": [["1", "2"]]})"),
                      ContainsSubstring("index must be an integer"));
    CHECK_THROWS_WITH(seq_from_text(R"({"entries": [[1, "2"], [1, "3"]]})"),
                      ContainsSubstring("strictly increasing"));
    CHECK_THROWS_WITH(seq_from_text(R"({"entries": [[1, true]]})"),
                      ContainsSubstring("value must be"));
    CHECK_THROWS_WITH(seq_from_text(R"({"entries": [[0, "1"]]})"),
                      ContainsSubstring("start at 1"));
}

TEST_CASE("file round-trip in both encodings") {
    std::mt19937_64 rng(402u);
    FinSeq f = random_vector(rng);
    std::string dir = "seqfile_test_tmp";
    write_seq_file(dir + ".lines", f, false);
    write_seq_file(dir + ".json", f, true);
    CHECK(read_seq_file(dir + ".lines") == f);
    CHECK(read_seq_file(dir + ".json") == f);
    CHECK_THROWS_AS(read_seq_file(dir + ".missing"), parse_error);
    std::remove((dir + ".lines").c_str());
    std::remove((dir + ".json").c_str());
}
