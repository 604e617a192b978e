#include <greedylab/suites.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <map>
#include <set>

using namespace greedylab;
using Catch::Matchers::ContainsSubstring;

namespace {

Rational linf_mutant(const FinSeq& f) { return norm_linf(f); }

const SuiteReport& find_report(const std::vector<SuiteReport>& reports,
                               const std::string& id) {
    for (const auto& r : reports)
        if (r.suite == id) return r;
    FAIL("no report for " + id);
    return reports.front();
}

FinSeq parse_witness(const std::string& input, const std::string& name) {
    std::string tag = name + " = ";
    auto at = input.find(tag);
    REQUIRE(at != std::string::npos);
    std::string rest = input.substr(at + tag.size());
    auto end = rest.find('}');
    REQUIRE(end != std::string::npos);
    // entries arrays contain no nested braces, the object closes at the
    // first one
    return seq_from_text(rest.substr(0, end + 1));
}

}  // namespace

TEST_CASE("registry owns every documented invariant exactly once") {
    std::map<std::string, std::set<std::size_t>> seen;
    std::set<std::string> ids;
    for (const auto& def : suite_registry()) {
        REQUIRE(ids.insert(def.id).second);
        REQUIRE(!seen[def.module_name].count(def.entry));
        seen[def.module_name].insert(def.entry);
        REQUIRE(std::string(def.invariant).size() > 10);
    }
    const std::map<std::string, std::size_t> expected = {
        {"seq_core", 1}, {"norms", 11}, {"envelope", 5}, {"constructions", 6}};
    REQUIRE(seen.size() == expected.size());
    for (const auto& [mod, count] : expected) {
        REQUIRE(seen.count(mod));
        REQUIRE(seen[mod].size() == count);
        REQUIRE(*seen[mod].begin() == 1);
        REQUIRE(*seen[mod].rbegin() == count);
    }
    REQUIRE(suite_registry().size() == 23);
}

TEST_CASE("identical specs give byte-identical reports at any worker count") {
    CorpusSpec spec;
    spec.trials = 40;
    std::string serial = report_text(run_all(spec, {}, 1));
    std::string serial_again = report_text(run_all(spec, {}, 1));
    std::string wide = report_text(run_all(spec, {}, 4));
    REQUIRE(serial == serial_again);
    REQUIRE(serial == wide);
    CHECK(serial.find("time") == std::string::npos);

    CorpusSpec other = spec;
    other.seed = 7;
    std::string reseeded = report_text(run_all(other, {}, 1));
    CHECK(reseeded != serial);
}

TEST_CASE("zero trials is a vacuous pass everywhere") {
    CorpusSpec spec;
    spec.trials = 0;
    for (const auto& def : suite_registry()) {
        SuiteReport r = run_suite(def.id, spec);
        INFO(def.id);
        CHECK(r.passed());
        CHECK(r.trials == 0);
    }
}

TEST_CASE("unknown suite ids are rejected") {
    CorpusSpec spec;
    CHECK_THROWS_AS(run_suite("BOGUS", spec), validation_error);
    CHECK_THROWS_WITH(run_suite("BOGUS", spec),
                      ContainsSubstring("unknown suite: 'BOGUS'"));
}

TEST_CASE("the default corpus clears every suite inside the budget") {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteReport> reports = run_all(CorpusSpec{});
    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::steady_clock::now() - t0);
    CHECK(elapsed.count() < 60);
    REQUIRE(reports.size() == suite_registry().size());
    for (const auto& r : reports) {
        INFO(r.suite << ": "
                     << (r.failures.empty() ? std::string("ok")
                                            : r.failures.front().expected + " | " +
                                                  r.failures.front().observed));
        CHECK(r.passed());
        CHECK(r.trials > 0);
    }

    const SuiteReport& emb = find_report(reports, "LORENTZ-EMB");
    CHECK(emb.constants.size() == 3);
    for (const auto& [key, value] : emb.constants) {
        CHECK(key.find("C_") == 0);
        CHECK_THAT(value, ContainsSubstring("empirical"));
    }
    const SuiteReport& ar = find_report(reports, "AR-PCONV");
    REQUIRE(ar.constants.size() == 2);
    CHECK(ar.constants[0].first == "kappa");
    CHECK(ar.constants[1].first == "p");
}

TEST_CASE("single suites run standalone at higher trial counts") {
    CorpusSpec spec;
    spec.trials = 1000;
    SuiteReport r = run_suite("B0-LE-L1", spec);
    CHECK(r.passed());
    CHECK(r.trials == 1000);

    SuiteReport tw = run_suite("TWISTED-ID", spec);
    CHECK(tw.passed());
    CHECK(tw.trials == 1000);
}

TEST_CASE("reports serialize in the structured text shape") {
    CorpusSpec spec;
    spec.trials = 5;
    std::string text = report_text(run_suite("TWISTED-ID", spec));
    CHECK_THAT(text, ContainsSubstring("suite: \"TWISTED-ID\""));
    CHECK_THAT(text, ContainsSubstring("seed: 0"));
    CHECK_THAT(text, ContainsSubstring("trials: 5"));
    CHECK_THAT(text, ContainsSubstring("failures: []"));
    CHECK_THAT(text, ContainsSubstring("constants: {}"));
}

TEST_CASE("an injected wrong gauge is caught with replayable witnesses") {
    NormHooks hooks;
    hooks.norm_b = linf_mutant;
    CorpusSpec spec;
    spec.trials = 200;

    SuiteReport b0 = run_suite("B0-LE-L1", spec, hooks);
    REQUIRE(!b0.passed());
    SuiteReport b3 = run_suite("BNORM3", spec, hooks);
    REQUIRE(!b3.passed());

    for (const SuiteReport* rep : {&b0, &b3})
        for (const auto& f : rep->failures) {
            CHECK(!f.input.empty());
            CHECK(!f.expected.empty());
            CHECK(!f.observed.empty());
        }

    // The sup norm respects the l1 ceiling, so every recorded failure is the
    // equality clause on nonnegative input. Replay one through the public
    // parser and norms and land on the recorded bytes.
    const SuiteFailure& w = b0.failures.front();
    CHECK(w.expected == "normB(f) == l1(f) for f >= 0");
    FinSeq f = parse_witness(w.input, "f");
    REQUIRE(!f.is_zero());
    CHECK(norm_linf(f) != norm_l1(f));
    CHECK(w.observed == "normB = " + format_rational(norm_linf(f)) +
                            ", l1 = " + format_rational(norm_l1(f)));
    CHECK(norm_B(f) == norm_l1(f));

    const SuiteFailure& w3 = b3.failures.front();
    FinSeq g = parse_witness(w3.input, "G");
    CHECK(w3.observed == "normB = " + format_rational(norm_linf(g)));
    CHECK_THAT(w3.expected, ContainsSubstring("normB(e1 - t e2 + g) == "));

    // The failure report carries the witnesses in full.
    std::string text = report_text(b0);
    CHECK_THAT(text, ContainsSubstring("failures: ["));
    CHECK_THAT(text, ContainsSubstring("input: f = {\"entries\""));
    CHECK_THAT(text, ContainsSubstring("expected: normB(f) == l1(f)"));

    // The genuine gauge passes the same corpus.
    CHECK(run_suite("B0-LE-L1", spec).passed());
    CHECK(run_suite("BNORM3", spec).passed());
}
