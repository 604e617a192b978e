#include <greedylab/constructions.hpp>
#include <greedylab/seqfile.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

using namespace greedylab;
using Catch::Matchers::ContainsSubstring;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "greedylab_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out);
    out << content;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path cap = work_dir() / ("stdout." + std::to_string(counter++));
    std::string cmd = std::string(GREEDYLAB_CLI_PATH) + " " + args + " > " +
                      cap.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(cap);
    return r;
}

fs::path seq_fixture(const std::string& name, const FinSeq& f) {
    fs::path p = work_dir() / name;
    write_seq_file(p.string(), f);
    return p;
}

}  // namespace

TEST_CASE("norm subcommand prints the documented exact values") {
    fs::path f312 = seq_fixture("f312.seq", FinSeq::dense({3, 1, 2}));
    fs::path f21 = seq_fixture("f21.seq", FinSeq::dense({2, 1}));
    fs::path falt = seq_fixture("falt.seq", FinSeq::dense({4, -3, 2, -1}));

    auto b = run_cli("norm --input " + f312.string() + " --which B");
    CHECK(b.code == 0);
    CHECK(b.out == "6\n");

    auto lor = run_cli("norm --input " + f21.string() + " --which lorentz:2");
    CHECK(lor.code == 0);
    CHECK(lor.out == "6 ^(1/2)\n");

    auto a = run_cli("norm --input " + falt.string() + " --which A");
    CHECK(a.code == 0);
    CHECK(a.out == "2\n");

    auto audited = run_cli("norm --input " + falt.string() + " --which B --oracle");
    CHECK(audited.code == 0);
    CHECK(audited.out == "4\noracle: 4 AGREE\n");

    auto comb = run_cli("norm --input " + falt.string() +
                        " --which B-comb --space lorentz:inf --oracle");
    CHECK(comb.code == 0);
    CHECK(comb.out == "6\noracle: 6 AGREE\n");
}

TEST_CASE("norm subcommand rejects bad inputs with the documented codes") {
    fs::path f21 = seq_fixture("codes21.seq", FinSeq::dense({2, 1}));

    CHECK(run_cli("norm --input " + (work_dir() / "absent.seq").string() +
                  " --which B")
              .code == 2);

    fs::path mangled = work_dir() / "mangled.seq";
    spit(mangled, "2 1\n1 2\n");
    CHECK(run_cli("norm --input " + mangled.string() + " --which B").code == 2);

    CHECK(run_cli("norm --input " + f21.string() + " --which l1 --space lorentz:2")
              .code == 3);
    CHECK(run_cli("norm --input " + f21.string() + " --which B-comb").code == 3);
    CHECK(run_cli("norm --input " + f21.string() + " --which bogus").code == 3);
    CHECK(run_cli("norm --input " + f21.string() + " --which l1 --oracle").code ==
          3);
    CHECK(run_cli("norm --no-such-flag").code == 3);

    std::vector<FinSeq::Entry> wide;
    for (Index n = 1; n <= 13; ++n) wide.emplace_back(n, Rational(1));
    fs::path big = seq_fixture("wide.seq", FinSeq(std::move(wide)));
    CHECK(run_cli("norm --input " + big.string() + " --which B --oracle").code ==
          4);
}

TEST_CASE("envelope subcommand reports certified intervals") {
    auto ind8 = run_cli("envelope --target indicator:8 --space lorentz:inf");
    CHECK(ind8.code == 0);
    CHECK(ind8.out.substr(0, 4) == "8 8\n");

    // The cyclic harmonic dictionary at m = 4 prices the alternating window
    // at exactly 2: two rotations cost 1 and two cost 13/12, and the net
    // equation forces equal weights, so the total lands above the naive
    // m/s_m estimate.
    auto alt4 = run_cli("envelope --target alt-indicator:4");
    CHECK(alt4.code == 0);
    CHECK(alt4.out.substr(0, 4) == "1 2\n");
    CHECK_THAT(alt4.out, ContainsSubstring("selector: \"B-comb:lorentz:inf\""));
    CHECK_THAT(alt4.out, ContainsSubstring("lower_certificate: coordinate[1]"));
    CHECK_THAT(alt4.out, ContainsSubstring("optimal: true"));
    CHECK_THAT(alt4.out, ContainsSubstring("weight: 12/25"));

    auto alt1 = run_cli("envelope --target alt-indicator:1");
    CHECK(alt1.code == 0);
    CHECK(alt1.out.substr(0, 4) == "1 1\n");

    auto coords = run_cli("envelope --target indicator:8 --dict coords");
    CHECK(coords.code == 0);
    CHECK(coords.out.substr(0, 4) == "8 8\n");

    CHECK(run_cli("envelope --target indicator:8 --dict cyclic:harmonic:4")
              .code == 5);
    CHECK(run_cli("envelope --target indicator:0").code == 3);
    CHECK(run_cli("envelope --target alt-indicator:4 --which C").code == 3);
    CHECK(run_cli("envelope --target alt-indicator:4 --dict magic").code == 3);
}

TEST_CASE("construct subcommand writes vectors with metadata") {
    fs::path out = work_dir() / "h0A3.seq";
    auto h0 = run_cli("construct --which h0 --preset A --depth 3 --out " +
                      out.string());
    REQUIRE(h0.code == 0);
    FinSeq vec = read_seq_file(out.string());
    CHECK(vec.support_size() == 78);
    CHECK(vec == build_h0(H0Params::preset_a(), 3).h0);
    std::string meta = slurp(out.string() + ".meta");
    CHECK_THAT(meta, ContainsSubstring("n: [3, 12, 39]"));
    CHECK_THAT(meta, ContainsSubstring("entries: 78"));
    CHECK_THAT(meta, ContainsSubstring("norm_B: 601/128"));

    fs::path gout = work_dir() / "G1.json";
    auto g = run_cli("construct --which G --t 1 --out " + gout.string());
    REQUIRE(g.code == 0);
    DiscontinuityWitness w = discontinuity_witness(32, Rational(1));
    CHECK(read_seq_file(gout.string()) == w.vector);
    CHECK(slurp(gout.string()).front() == '{');  // .json extension switches encoding
    CHECK_THAT(slurp(gout.string() + ".meta"),
               ContainsSubstring("predicted: " + format_rational(w.predicted)));

    fs::path lout = work_dir() / "leib.seq";
    auto l = run_cli("construct --which leibniz --out " + lout.string());
    REQUIRE(l.code == 0);
    CHECK(read_seq_file(lout.string()) == FinSeq::dense({4, -3, 2, -1}));
    CHECK_THAT(slurp(lout.string() + ".meta"), ContainsSubstring("alpha: 4"));

    fs::path hout = work_dir() / "hB5.seq";
    auto h = run_cli("construct --which h --preset B --depth 5 --out " +
                     hout.string());
    REQUIRE(h.code == 0);
    CHECK(read_seq_file(hout.string()) == build_h(H0Params::preset_b(), 5).h);
    CHECK_THAT(slurp(hout.string() + ".meta"), ContainsSubstring("sigma_g: 0"));

    fs::path bad = work_dir() / "bad.seq";
    CHECK(run_cli("construct --which h0 --preset A --depth 9 --out " +
                  bad.string())
              .code == 6);
    CHECK(run_cli("construct --which G --out " + bad.string()).code == 3);
    CHECK(run_cli("construct --which G --t x --out " + bad.string()).code == 3);
    CHECK(run_cli("construct --which leibniz --depth 2 --out " + bad.string())
              .code == 3);
    CHECK(run_cli("construct --which wat --out " + bad.string()).code == 3);
}

TEST_CASE("verify subcommand runs suites and honors the exit contract") {
    auto one = run_cli("verify --suite TWISTED-ID --trials 25");
    CHECK(one.code == 0);
    CHECK_THAT(one.out, ContainsSubstring("suite: \"TWISTED-ID\""));
    CHECK_THAT(one.out, ContainsSubstring("trials: 25"));
    CHECK_THAT(one.out, ContainsSubstring("failures: []"));

    auto bogus = run_cli("verify --suite BOGUS");
    CHECK(bogus.code == 3);
    CHECK(bogus.out.empty());

    fs::path rep = work_dir() / "report.txt";
    auto with_file =
        run_cli("verify --suite ORACLE-EQ --trials 25 --report " + rep.string());
    CHECK(with_file.code == 0);
    CHECK(slurp(rep) == with_file.out);
}

TEST_CASE("identical flags give identical payload bytes at any thread count") {
    std::string flags = "verify --suite all --trials 20 --seed 3";
    auto first = run_cli(flags + " --threads 1");
    auto again = run_cli(flags + " --threads 1");
    auto wide = run_cli(flags + " --threads 4");
    REQUIRE(first.code == 0);
    CHECK(first.out == again.out);
    CHECK(first.out == wide.out);

    REQUIRE(setenv("GREEDYLAB_THREADS", "3", 1) == 0);
    auto via_env = run_cli(flags);
    REQUIRE(unsetenv("GREEDYLAB_THREADS") == 0);
    CHECK(via_env.out == first.out);
}

TEST_CASE("democracy subcommand emits the exact closed-form table") {
    auto lor = run_cli("democracy --space lorentz:inf --m-max 5");
    CHECK(lor.code == 0);
    CHECK(lor.out == "m,phi_l,phi_u\n1,1,1\n2,2,2\n3,3,3\n4,4,4\n5,5,5\n");

    auto comb = run_cli("democracy --space B-comb:lorentz:inf --m-max 5");
    CHECK(comb.code == 0);
    CHECK(comb.out == lor.out);

    auto gauge = run_cli("democracy --space A --m-max 4");
    CHECK(gauge.code == 0);
    CHECK(gauge.out == "m,phi_l,phi_u\n1,1,1\n2,1,2\n3,2,3\n4,2,4\n");

    fs::path csv = work_dir() / "prof.csv";
    auto to_file =
        run_cli("democracy --space lorentz:2 --m-max 3 --csv " + csv.string());
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(csv) ==
          "m,phi_l,phi_u\n1,1,1\n2,3 ^(1/2),3 ^(1/2)\n3,6 ^(1/2),6 ^(1/2)\n");

    CHECK(run_cli("democracy --space A --m-max 4 --window 2").code == 3);
    CHECK(run_cli("democracy --space wat --m-max 4").code == 3);
}

TEST_CASE("cli files round-trip through both encodings") {
    std::mt19937_64 rng(909090);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FinSeq::Entry> es;
        Index n = 0;
        std::uniform_int_distribution<Index> step(1, 9);
        std::uniform_int_distribution<std::int64_t> num(-30, 30);
        std::uniform_int_distribution<std::int64_t> den(1, 12);
        std::uniform_int_distribution<int> len(0, 7);
        int count = len(rng);
        for (int i = 0; i < count; ++i) {
            n += step(rng);
            es.emplace_back(n, Rational(num(rng), den(rng)));
        }
        FinSeq f(std::move(es));
        fs::path lines = work_dir() / "round.seq";
        fs::path json = work_dir() / "round.json";
        write_seq_file(lines.string(), f, false);
        write_seq_file(json.string(), f, true);
        REQUIRE(read_seq_file(lines.string()) == f);
        REQUIRE(read_seq_file(json.string()) == f);
    }
}
