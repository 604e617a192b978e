#include <greedylab/democracy.hpp>
#include <greedylab/suites.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace greedylab;

namespace {

/// Handler-level abort with the documented exit code.
struct cli_exit {
    int code;
    std::string message;
};

std::string approx(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string show_rational(const Rational& x, bool as_float) {
    return as_float ? approx(static_cast<double>(x)) : format_rational(x);
}

std::string show_value(const NormValue& v, bool as_float) {
    if (as_float) return approx(v.to_double());
    if (v.is_exact()) return format_rational(v.exact_value());
    return format_rational(v.power()) + " ^(1/" + std::to_string(v.exponent()) +
           ")";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out.flush()) throw parse_error("write to '" + path + "' failed");
}

std::size_t parse_count(const std::string& text, const std::string& what) {
    if (text.empty() || text.size() > 6) throw cli_exit{3, "bad " + what};
    for (char ch : text)
        if (ch < '0' || ch > '9') throw cli_exit{3, "bad " + what};
    std::size_t m = std::stoull(text);
    if (m < 1) throw cli_exit{3, what + " must be >= 1"};
    return m;
}

std::string show_interval(const IntInterval& I) {
    return "[" + std::to_string(I.lo) + "," + std::to_string(I.hi) + "]";
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() &&
           s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

// ----------------------------------------------------------------- norm

struct NormOpts {
    std::string input, which = "B", space;
    bool oracle = false;
    bool as_float = false;
};

int run_norm(const NormOpts& o) {
    FinSeq f = read_seq_file(o.input);
    bool combined = o.which == "B-comb" || o.which == "A-comb";
    if (!o.space.empty() && !combined)
        throw cli_exit{3, "--space only applies to combined norms"};

    NormValue value, audit;
    bool have_audit = false;
    if (o.which == "l1") {
        value = NormValue::exact(norm_l1(f));
    } else if (o.which == "linf") {
        value = NormValue::exact(norm_linf(f));
    } else if (o.which.rfind("lorentz:", 0) == 0) {
        value = lorentz_norm(f, SpaceSpec::parse(o.which.substr(8)));
    } else if (o.which == "B" || o.which == "A") {
        value = NormValue::exact(o.which == "B" ? norm_B(f) : norm_A(f));
        if (o.oracle) {
            audit = NormValue::exact(o.which == "B" ? norm_B_oracle(f)
                                                    : norm_A_oracle(f));
            have_audit = true;
        }
    } else if (combined) {
        if (o.space.empty())
            throw cli_exit{3, "combined norms need --space lorentz:q"};
        if (o.space.rfind("lorentz:", 0) != 0)
            throw cli_exit{3, "--space must be lorentz:q"};
        NormSelector sel = NormSelector::parse(o.which + ":" + o.space);
        value = evaluate(sel, f);
        if (o.oracle) {
            Rational gauge =
                o.which == "B-comb" ? norm_B_oracle(f) : norm_A_oracle(f);
            audit = NormValue::max(NormValue::exact(gauge),
                                   lorentz_norm(f, sel.space));
            have_audit = true;
        }
    } else {
        throw cli_exit{3, "unknown norm '" + o.which + "'"};
    }
    if (o.oracle && !have_audit)
        throw cli_exit{3, "--oracle applies to the greedy gauges only"};

    std::cout << show_value(value, o.as_float) << "\n";
    if (have_audit)
        std::cout << "oracle: " << show_value(audit, o.as_float) << " "
                  << (audit == value ? "AGREE" : "DISAGREE") << "\n";
    return 0;
}

// -------------------------------------------------------------- envelope

struct EnvOpts {
    std::string target, space = "lorentz:inf", which = "B", dict = "auto";
    bool as_float = false;
};

FinSeq alternating_indicator(Index m) {
    SignVector tau = SignVector::alternating(IntInterval(1, m));
    return FinSeq::signed_indicator(tau, IndexSet::interval(IntInterval(1, m)));
}

int run_envelope(const EnvOpts& o) {
    std::size_t declared_m = 0;
    bool is_alt = false;
    FinSeq target;
    if (o.target.rfind("indicator:", 0) == 0) {
        declared_m = parse_count(o.target.substr(10), "indicator size");
        target = FinSeq::indicator(
            IndexSet::interval(IntInterval(1, static_cast<Index>(declared_m))));
    } else if (o.target.rfind("alt-indicator:", 0) == 0) {
        declared_m = parse_count(o.target.substr(14), "indicator size");
        is_alt = true;
        target = alternating_indicator(static_cast<Index>(declared_m));
    } else {
        target = read_seq_file(o.target);
    }
    if (o.which != "B" && o.which != "A")
        throw cli_exit{3, "--which must be B or A"};
    if (o.space.rfind("lorentz:", 0) != 0)
        throw cli_exit{3, "--space must be lorentz:q"};
    NormSelector sel = NormSelector::parse(o.which + "-comb:" + o.space);

    std::size_t extent = 1;
    for (const auto& [n, v] : target.entries())
        extent = std::max<std::size_t>(extent, static_cast<std::size_t>(n));

    EnvelopeConfig cfg;
    if (o.dict == "auto") {
        if (is_alt) cfg.cyclic_m = declared_m;
    } else if (o.dict == "coords") {
        cfg.interval_pieces = false;
    } else if (o.dict.rfind("cyclic:harmonic", 0) == 0) {
        cfg.coordinate_atoms = false;
        cfg.interval_pieces = false;
        std::string rest = o.dict.substr(15);
        if (rest.empty())
            cfg.cyclic_m = declared_m ? declared_m : extent;
        else if (rest[0] == ':')
            cfg.cyclic_m = parse_count(rest.substr(1), "cyclic window");
        else
            throw cli_exit{3, "unknown dictionary '" + o.dict + "'"};
    } else {
        throw cli_exit{3, "unknown dictionary '" + o.dict + "'"};
    }

    EnvelopeBound env = envelope_interval(target, sel, cfg);
    std::cout << show_rational(env.lower, o.as_float) << " "
              << show_value(env.upper, o.as_float) << "\n";

    std::string cert = "{\n";
    cert += "  target: " + seq_to_json(target) + "\n";
    cert += "  selector: \"" + sel.str() + "\"\n";
    cert += "  lower: " + format_rational(env.lower) + "\n";
    cert += "  lower_certificate: " + env.lower_cert.str() + "\n";
    cert += "  upper: " + show_value(env.upper, false) + "\n";
    cert += std::string("  optimal: ") +
            (env.upper_cert.optimal ? "true" : "false") + "\n";
    if (env.upper_cert.decomposition.empty()) {
        cert += "  decomposition: []\n";
    } else {
        cert += "  decomposition: [\n";
        for (const auto& [w, atom] : env.upper_cert.decomposition) {
            cert += "    { weight: " + format_rational(w) +
                    " norm: " + show_value(atom.norm, false) +
                    " atom: " + seq_to_json(atom.vector) + " }\n";
        }
        cert += "  ]\n";
    }
    cert += "}\n";
    std::cout << cert;
    return 0;
}

// -------------------------------------------------------------- construct

struct ConstructOpts {
    std::string which, preset = "A", out, t_text;
    unsigned depth = 0;
    bool preset_given = false, depth_given = false, t_given = false;
};

std::string h0_meta(const char* which, const ConstructOpts& o, const H0Params& p,
                    unsigned K, const H0Blocks& bl, const FinSeq& vec,
                    bool doubled) {
    std::string meta = "{\n";
    meta += std::string("  which: \"") + which + "\"\n";
    meta += "  preset: \"" + o.preset + "\"\n";
    meta += "  depth: " + std::to_string(K) + "\n";
    meta += "  n: [";
    for (unsigned k = 1; k <= K; ++k)
        meta += (k > 1 ? ", " : "") + std::to_string(bl.n[k]);
    meta += "]\n  blocks: [";
    for (unsigned k = 1; k <= K; ++k)
        meta += (k > 1 ? ", " : "") + show_interval(doubled ? bl.H[k] : bl.J[k]);
    meta += "]\n";
    meta += "  entries: " + std::to_string(vec.support_size()) + "\n";
    if (doubled) {
        meta += "  sigma_g: " + format_rational(sigma_g(vec)) + "\n";
    } else {
        meta += "  norm_B: " + format_rational(norm_B(vec)) + "\n";
        if (p.preset == H0Params::Preset::A)
            meta += "  divergence_floor: " +
                    format_rational(pow_rational(Rational(3, 2), K)) + "\n";
        else if (p.preset == H0Params::Preset::B)
            meta += "  bound_ceiling: 3/2\n";
    }
    meta += "}\n";
    return meta;
}

int run_construct(const ConstructOpts& o) {
    FinSeq vec;
    std::string meta;
    if (o.which == "h0" || o.which == "h") {
        if (o.t_given) throw cli_exit{3, "--t only applies to G"};
        H0Params p;
        if (o.preset == "A")
            p = H0Params::preset_a();
        else if (o.preset == "B")
            p = H0Params::preset_b();
        else
            throw cli_exit{3, "--preset must be A or B"};
        unsigned K = o.depth_given ? o.depth : 0;
        if (K > p.depth)
            throw validation_error("preset " + o.preset + " tops out at depth " +
                                   std::to_string(p.depth));
        if (o.which == "h0") {
            H0Result r = build_h0(p, K);
            vec = r.h0;
            meta = h0_meta("h0", o, p, r.blocks.depth, r.blocks, vec, false);
        } else {
            DoubledResult d = build_h(p, K);
            vec = d.h;
            meta = h0_meta("h", o, p, d.blocks.depth, d.blocks, vec, true);
        }
    } else if (o.which == "G") {
        if (o.preset_given) throw cli_exit{3, "--preset only applies to h0 and h"};
        if (!o.t_given) throw cli_exit{3, "G needs --t"};
        Rational t;
        try {
            t = parse_rational(o.t_text);
        } catch (const validation_error& e) {
            throw cli_exit{3, e.what()};
        }
        Index N = o.depth_given ? static_cast<Index>(o.depth) : 32;
        DiscontinuityWitness w = discontinuity_witness(N, t);
        vec = w.vector;
        meta = "{\n";
        meta += "  which: \"G\"\n";
        meta += "  N: " + std::to_string(N) + "\n";
        meta += "  t: " + format_rational(t) + "\n";
        meta += "  predicted: " + format_rational(w.predicted) + "\n";
        meta += "  entries: " + std::to_string(vec.support_size()) + "\n";
        meta += "}\n";
    } else if (o.which == "leibniz") {
        if (o.preset_given || o.depth_given || o.t_given)
            throw cli_exit{3, "the leibniz fixture takes no shape flags"};
        std::vector<IntInterval> singles;
        for (Index k = 1; k <= 4; ++k) singles.emplace_back(k, k);
        LeibnizData d = leibniz_check(FinSeq::dense({4, 3, 2, 1}), singles);
        vec = alternating_from_leibniz(d);
        meta = "{\n";
        meta += "  which: \"leibniz\"\n";
        meta += "  alpha: " + format_rational(d.alpha) + "\n";
        meta += "  omega_trunc: " + format_rational(d.omega_trunc) + "\n";
        meta += "  blocks: [";
        for (std::size_t k = 0; k < d.blocks.size(); ++k)
            meta += (k ? ", " : "") + show_interval(d.blocks[k]);
        meta += "]\n";
        meta += "  entries: " + std::to_string(vec.support_size()) + "\n";
        meta += "}\n";
    } else {
        throw cli_exit{3, "unknown construction '" + o.which + "'"};
    }
    write_seq_file(o.out, vec, ends_with(o.out, ".json"));
    write_text_file(o.out + ".meta", meta);
    return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyOpts {
    std::string suite = "all", report;
    std::uint64_t trials = 500, seed = 0;
    unsigned threads = 0;
};

int run_verify(const VerifyOpts& o) {
    CorpusSpec spec;
    spec.trials = o.trials;
    spec.seed = o.seed;
    std::vector<SuiteReport> reports;
    if (o.suite == "all")
        reports = run_all(spec, {}, o.threads);
    else
        reports.push_back(run_suite(o.suite, spec, {}, o.threads));
    std::string text = report_text(reports);
    std::cout << text;
    if (!o.report.empty()) write_text_file(o.report, text);
    return all_passed(reports) ? 0 : 1;
}

// -------------------------------------------------------------- democracy

struct DemOpts {
    std::string space, csv;
    std::size_t m_max = 0, window = 0;
    bool window_given = false;
};

int run_democracy(const DemOpts& o) {
    NormSelector sel = NormSelector::parse(o.space);
    std::size_t window = o.window_given ? o.window : o.m_max;
    DemocracyProfile prof = democracy_profile(sel, o.m_max, window);
    std::string csv = "m,phi_l,phi_u\n";
    for (std::size_t m = 1; m <= prof.m_max; ++m)
        csv += std::to_string(m) + "," + show_value(prof.lower[m - 1], false) +
               "," + show_value(prof.upper[m - 1], false) + "\n";
    if (o.csv.empty())
        std::cout << csv;
    else
        write_text_file(o.csv, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedylab: exact norms, envelopes, and constructions for "
                 "thresholding-greedy sequence spaces"};
    app.require_subcommand(1);

    NormOpts nopt;
    auto* norm_cmd = app.add_subcommand("norm", "evaluate a norm on a SeqFile");
    norm_cmd->add_option("--input", nopt.input, "sequence file")->required();
    norm_cmd->add_option("--which", nopt.which,
                         "l1|linf|lorentz:q|B|A|B-comb|A-comb");
    norm_cmd->add_option("--space", nopt.space,
                         "lorentz:q scale for combined norms");
    norm_cmd->add_flag("--oracle", nopt.oracle,
                       "audit against the enumerating oracle");
    norm_cmd->add_flag("--float", nopt.as_float,
                       "approximate decimal output (not authoritative)");

    EnvOpts eopt;
    auto* env_cmd =
        app.add_subcommand("envelope", "two-sided convexification interval");
    env_cmd->add_option("--target", eopt.target,
                        "sequence file, indicator:m, or alt-indicator:m")
        ->required();
    env_cmd->add_option("--space", eopt.space, "lorentz:q scale");
    env_cmd->add_option("--which", eopt.which, "B or A gauge");
    env_cmd->add_option("--dict", eopt.dict,
                        "auto|coords|cyclic:harmonic[:m] atom dictionary");
    env_cmd->add_flag("--float", eopt.as_float,
                      "approximate decimal output (not authoritative)");

    ConstructOpts copt;
    auto* con_cmd =
        app.add_subcommand("construct", "emit a counterexample vector");
    con_cmd->add_option("--which", copt.which, "h0|h|G|leibniz")->required();
    auto* preset_opt = con_cmd->add_option("--preset", copt.preset, "A or B");
    auto* depth_opt = con_cmd->add_option(
        "--depth", copt.depth, "truncation depth (h0, h) or window size (G)");
    auto* t_opt = con_cmd->add_option("--t", copt.t_text,
                                      "second-spike weight for G, rational");
    con_cmd->add_option("--out", copt.out, "output sequence file")->required();

    VerifyOpts vopt;
    auto* ver_cmd = app.add_subcommand("verify", "run certification suites");
    ver_cmd->add_option("--suite", vopt.suite, "suite id or 'all'");
    ver_cmd->add_option("--trials", vopt.trials, "randomized trials per suite");
    ver_cmd->add_option("--seed", vopt.seed, "corpus seed");
    ver_cmd->add_option("--report", vopt.report, "also write the report here");
    ver_cmd->add_option("--threads", vopt.threads,
                        "worker threads (default GREEDYLAB_THREADS or 1)");

    DemOpts dopt;
    auto* dem_cmd =
        app.add_subcommand("democracy", "phi_l/phi_u table over indicators");
    dem_cmd->add_option("--space", dopt.space, "norm selector")->required();
    dem_cmd->add_option("--m-max", dopt.m_max, "largest indicator size")
        ->required();
    auto* win_opt =
        dem_cmd->add_option("--window", dopt.window, "index window (>= m-max)");
    dem_cmd->add_option("--csv", dopt.csv, "write the table here instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    copt.preset_given = preset_opt->count() > 0;
    copt.depth_given = depth_opt->count() > 0;
    copt.t_given = t_opt->count() > 0;
    dopt.window_given = win_opt->count() > 0;

    try {
        if (norm_cmd->parsed()) return run_norm(nopt);
        if (env_cmd->parsed()) return run_envelope(eopt);
        if (con_cmd->parsed()) return run_construct(copt);
        if (ver_cmd->parsed()) return run_verify(vopt);
        if (dem_cmd->parsed()) return run_democracy(dopt);
    } catch (const cli_exit& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const parse_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lp_infeasible& e) {
        std::cerr << e.what() << "\n";
        return 5;
    } catch (const cap_exceeded& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const validation_error& e) {
        std::cerr << e.what() << "\n";
        return con_cmd->parsed() ? 6 : 3;
    }
    return 0;
}
