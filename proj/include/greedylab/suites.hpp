#pragma once

#include "corpus.hpp"
#include "envelope.hpp"
#include "parallel.hpp"
#include "seqfile.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace greedylab {

/// Replaceable gauge evaluation. Production code leaves norm_b null and gets
/// the library implementation; the mutation tests inject a wrong gauge to
/// prove the suites can catch one.
struct NormHooks {
    Rational (*norm_b)(const FinSeq&) = nullptr;
};

struct SuiteFailure {
    std::uint64_t trial = 0;
    std::string input;     // replayable serialization of the inputs
    std::string expected;  // the violated relation
    std::string observed;  // the witnessing values
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;  // property checks actually executed
    std::vector<SuiteFailure> failures;
    std::vector<std::pair<std::string, std::string>> constants;
    bool passed() const { return failures.empty(); }
};

namespace detail {

inline Rational gauge_b(const NormHooks& h, const FinSeq& f) {
    return h.norm_b ? h.norm_b(f) : norm_B(f);
}

inline Rational rho_inf(const FinSeq& f, std::size_t k = 0) {
    return rho_1q(f, k, SpaceSpec::lorentz_inf()).exact_value();
}

inline std::string show_seq(const char* name, const FinSeq& f) {
    return std::string(name) + " = " + seq_to_json(f);
}

inline std::string show_set(const char* name, const IndexSet& A) {
    std::string out = std::string(name) + " = {";
    bool first = true;
    for (Index n : A) {
        if (!first) out += ",";
        out += std::to_string(n);
        first = false;
    }
    return out + "}";
}

inline std::string rat(const Rational& x) { return format_rational(x); }

/// FNV-1a over the suite id, salted by the phase counter, so every suite and
/// phase owns an independent deterministic sub-corpus.
inline std::uint64_t stream_id(const char* s, std::uint64_t phase = 0) {
    std::uint64_t h = 1469598103934665603ull;
    for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ull;
    return h ^ (phase * 0x9e3779b97f4a7c15ull);
}

struct TrialOut {
    std::vector<SuiteFailure> failures;
    std::map<std::string, Rational> maxima;

    void fail(std::string input, std::string expected, std::string observed) {
        failures.push_back(
            {0, std::move(input), std::move(expected), std::move(observed)});
    }
    void observe(const std::string& key, const Rational& v) {
        auto it = maxima.find(key);
        if (it == maxima.end())
            maxima.emplace(key, v);
        else if (v > it->second)
            it->second = v;
    }
};

/// One deterministic pass of `count` independent trials. Results live in
/// per-trial slots and are merged in trial order, so the report is
/// byte-identical for every worker count.
template <class Fn>
std::map<std::string, Rational> run_phase(SuiteReport& rep, const CorpusSpec& spec,
                                          std::uint64_t stream, std::uint64_t count,
                                          unsigned threads, Fn&& fn) {
    std::vector<TrialOut> slots(count);
    parallel_trials(count, threads, [&](std::uint64_t t) {
        TrialRng rng(spec.seed, stream, t);
        fn(t, rng, slots[t]);
    });
    std::map<std::string, Rational> maxima;
    for (std::uint64_t t = 0; t < count; ++t) {
        for (auto& f : slots[t].failures) {
            f.trial = t;
            rep.failures.push_back(std::move(f));
        }
        for (const auto& [k, v] : slots[t].maxima) {
            auto it = maxima.find(k);
            if (it == maxima.end())
                maxima.emplace(k, v);
            else if (v > it->second)
                it->second = v;
        }
    }
    rep.trials += count;
    return maxima;
}

inline SuiteReport make_report(const char* id, const CorpusSpec& spec) {
    SuiteReport r;
    r.suite = id;
    r.seed = spec.seed;
    return r;
}

// ---------------------------------------------------------------- seq_core

inline SuiteReport suite_twisted_id(const CorpusSpec& spec, const NormHooks&,
                                    unsigned threads) {
    SuiteReport rep = make_report("TWISTED-ID", spec);
    run_phase(rep, spec, stream_id("TWISTED-ID"), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, spec), g = random_seq(rng, spec);
                  IndexSet A = random_subset(rng, spec.window, 8);
                  IndexSet B = random_subset(rng, spec.window, 8);
                  IndexSet D = random_subset(rng, spec.window, 8);
                  FinSeq s = f + g;
                  Rational lhs = s.sum_over(A) - f.sum_over(B) - g.sum_over(D);
                  Rational rhs = f.sum_over(A.unite(D).minus(B)) +
                                 g.sum_over(A.unite(B).minus(D)) -
                                 s.sum_over(B.unite(D).minus(A));
                  if (lhs != rhs)
                      out.fail(show_seq("f", f) + "; " + show_seq("g", g) + "; " +
                                   show_set("A", A) + "; " + show_set("B", B) +
                                   "; " + show_set("D", D),
                               "exchange identity residue == 0",
                               "residue = " + rat(lhs - rhs));
              });
    return rep;
}

// ------------------------------------------------------------------- norms

inline SuiteReport suite_oracle_eq(const CorpusSpec& spec, const NormHooks& hooks,
                                   unsigned threads) {
    SuiteReport rep = make_report("ORACLE-EQ", spec);
    CorpusSpec local = spec;
    local.window = IntInterval(1, 10);
    local.supp_max = std::min<std::size_t>(spec.supp_max, 8);
    local.supp_min = std::min(spec.supp_min, local.supp_max);
    local.grid = {Rational(1, 2), Rational(-1, 2), 1, -1, 2, -2};
    run_phase(rep, spec, stream_id("ORACLE-EQ"), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, local);
                  Rational fast_b = gauge_b(hooks, f), slow_b = norm_B_oracle(f);
                  if (fast_b != slow_b)
                      out.fail(show_seq("f", f), "normB(f) == normB_oracle(f)",
                               rat(fast_b) + " vs " + rat(slow_b));
                  Rational fast_a = norm_A(f), slow_a = norm_A_oracle(f);
                  if (fast_a != slow_a)
                      out.fail(show_seq("f", f), "normA(f) == normA_oracle(f)",
                               rat(fast_a) + " vs " + rat(slow_a));
              });
    return rep;
}

inline SuiteReport suite_b0_le_l1(const CorpusSpec& spec, const NormHooks& hooks,
                                  unsigned threads) {
    SuiteReport rep = make_report("B0-LE-L1", spec);
    run_phase(rep, spec, stream_id("B0-LE-L1"), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, spec);
                  Rational nb = gauge_b(hooks, f), l1 = norm_l1(f);
                  if (!(nb <= l1))
                      out.fail(show_seq("f", f), "normB(f) <= l1(f)",
                               "normB = " + rat(nb) + ", l1 = " + rat(l1));
                  std::vector<FinSeq::Entry> es;
                  for (const auto& [n, v] : f.entries()) es.emplace_back(n, abs(v));
                  FinSeq g(std::move(es));
                  Rational nbg = gauge_b(hooks, g), l1g = norm_l1(g);
                  if (nbg != l1g)
                      out.fail(show_seq("f", g), "normB(f) == l1(f) for f >= 0",
                               "normB = " + rat(nbg) + ", l1 = " + rat(l1g));
              });
    return rep;
}

inline SuiteReport suite_b_schauder(const CorpusSpec& spec, const NormHooks& hooks,
                                    unsigned threads) {
    SuiteReport rep = make_report("B-SCHAUDER", spec);
    run_phase(
        rep, spec, stream_id("B-SCHAUDER"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec);
            Rational base = gauge_b(hooks, f);
            std::vector<IntInterval> cuts;
            IndexSet support = f.support();
            const auto& supp = support.values();
            for (std::size_t i = 0; i < supp.size(); ++i)
                for (std::size_t j = i; j < supp.size(); ++j)
                    cuts.emplace_back(supp[i], supp[j]);
            cuts.push_back(random_interval(rng, spec.window));
            cuts.push_back(random_interval(rng, spec.window));
            for (const auto& J : cuts) {
                Rational cut = gauge_b(hooks, f.project(J));
                if (!(cut <= base))
                    out.fail(show_seq("f", f) + "; J = [" + std::to_string(J.lo) +
                                 "," + std::to_string(J.hi) + "]",
                             "normB(S_J f) <= normB(f)",
                             rat(cut) + " > " + rat(base));
            }
        });
    return rep;
}

inline SuiteReport suite_qg_b(const CorpusSpec& spec, const NormHooks& hooks,
                              unsigned threads) {
    SuiteReport rep = make_report("QG-B", spec);
    run_phase(rep, spec, stream_id("QG-B"), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, spec);
                  Rational base = gauge_b(hooks, f);
                  for (const auto& A : all_greedy_sets(f)) {
                      Rational res = gauge_b(hooks, f - f.project(A));
                      if (!(res <= base))
                          out.fail(show_seq("f", f) + "; " + show_set("A", A),
                                   "normB(f - S_A f) <= normB(f)",
                                   rat(res) + " > " + rat(base));
                  }
              });
    return rep;
}

inline SuiteReport suite_b1_subadd(const CorpusSpec& spec, const NormHooks& hooks,
                                   unsigned threads) {
    SuiteReport rep = make_report("B1-SUBADD", spec);
    run_phase(
        rep, spec, stream_id("B1-SUBADD"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec), g = random_seq(rng, spec);
            FinSeq s = f + g;
            Rational slack = 2 * (rho_inf(s) + rho_inf(f) + rho_inf(g));
            Rational lb = gauge_b(hooks, s),
                     rb = slack + gauge_b(hooks, f) + gauge_b(hooks, g);
            if (!(lb <= rb))
                out.fail(show_seq("f", f) + "; " + show_seq("g", g),
                         "normB(f+g) <= 2(w(f+g)+w(f)+w(g)) + normB(f) + normB(g)",
                         rat(lb) + " > " + rat(rb));
            Rational la = norm_A(s), ra = slack + norm_A(f) + norm_A(g);
            if (!(la <= ra))
                out.fail(show_seq("f", f) + "; " + show_seq("g", g),
                         "normA(f+g) <= 2(w(f+g)+w(f)+w(g)) + normA(f) + normA(g)",
                         rat(la) + " > " + rat(ra));
            if (sigma_g(s) != sigma_g(f) + sigma_g(g))
                out.fail(show_seq("f", f) + "; " + show_seq("g", g),
                         "sigma_g(f+g) == sigma_g(f) + sigma_g(g)",
                         rat(sigma_g(s)) + " vs " +
                             rat(sigma_g(f) + sigma_g(g)));
        });
    return rep;
}

inline SuiteReport suite_bs_lem(const CorpusSpec& spec, const NormHooks&,
                                unsigned threads) {
    SuiteReport rep = make_report("BS-LEM", spec);
    run_phase(rep, spec, stream_id("BS-LEM"), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, spec), g = random_seq(rng, spec);
                  std::size_t k1 = rng.below(4), k2 = rng.below(4);
                  Rational lhs = rho_inf(f + g, 1 + k1 + k2);
                  Rational rhs = 2 * (rho_inf(f, k1) + rho_inf(g, k2));
                  if (!(lhs <= rhs))
                      out.fail(show_seq("f", f) + "; " + show_seq("g", g) +
                                   "; k1 = " + std::to_string(k1) +
                                   "; k2 = " + std::to_string(k2),
                               "rho(f+g, 1+k1+k2) <= 2(rho(f,k1) + rho(g,k2))",
                               rat(lhs) + " > " + rat(rhs));
              });
    return rep;
}

inline SuiteReport suite_b99(const CorpusSpec& spec, const NormHooks&,
                             unsigned threads) {
    SuiteReport rep = make_report("B99", spec);
    run_phase(
        rep, spec, stream_id("B99"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec);
            IndexSet A = random_greedy_set(rng, f);
            IndexSet B = random_subset(rng, spec.window, 10).minus(A);
            std::size_t k = rng.below(A.size() + 1);
            Rational lhs = abs(f.sum_over(B)) * Rational(1 + A.size() - k);
            Rational rhs = Rational(B.size()) * rho_inf(f, k);
            if (!(lhs <= rhs))
                out.fail(show_seq("f", f) + "; " + show_set("A", A) + "; " +
                             show_set("B", B) + "; k = " + std::to_string(k),
                         "|1*_B(f)| (1+|A|-k) <= |B| rho(f,k)",
                         rat(lhs) + " > " + rat(rhs));
        });
    return rep;
}

inline SuiteReport suite_aconv(const CorpusSpec& spec, const NormHooks&,
                               unsigned threads) {
    SuiteReport rep = make_report("ACONV", spec);
    run_phase(
        rep, spec, stream_id("ACONV"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec);
            IndexSet A = random_greedy_set(rng, f);
            Rational res = sigma_g(f - f.project(A));
            if (res != sigma_g_defect(f, A))
                out.fail(show_seq("f", f) + "; " + show_set("A", A),
                         "sigma_g(f - S_A f) == sigma_g(f, A)",
                         rat(res) + " vs " + rat(sigma_g_defect(f, A)));
            auto family = all_greedy_sets(f);
            std::optional<Rational> prev;
            for (Index k : f.support()) {
                IndexSet win = max_greedy_within(f, k);
                Rational peak = 0;
                for (const auto& big : family) {
                    if (!win.subset_of(big)) continue;
                    Rational cand = abs(sigma_g_defect(f, big));
                    if (cand > peak) peak = cand;
                }
                if (prev && peak > *prev)
                    out.fail(show_seq("f", f) + "; window hi = " + std::to_string(k),
                             "max |sigma_g(f,B)| over greedy B >= A is "
                             "nonincreasing along window maxima",
                             rat(peak) + " > " + rat(*prev));
                prev = peak;
            }
        });
    return rep;
}

inline SuiteReport suite_sym_split(const CorpusSpec& spec, const NormHooks& hooks,
                                   unsigned threads) {
    SuiteReport rep = make_report("SYM-SPLIT", spec);
    SpaceSpec w1 = SpaceSpec::lorentz(1), w2 = SpaceSpec::lorentz(2),
              winf = SpaceSpec::lorentz_inf();
    run_phase(
        rep, spec, stream_id("SYM-SPLIT"), spec.trials, threads,
        [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec);
            Permutation pi = random_window_permutation(rng, spec.window);
            FinSeq moved = f.permute(pi);
            if (norm_A(moved) != norm_A(f))
                out.fail(show_seq("f", f) + "; " + show_seq("pi f", moved),
                         "normA(P_pi f) == normA(f)",
                         rat(norm_A(moved)) + " vs " + rat(norm_A(f)));
            for (const SpaceSpec& s : {w1, w2, winf})
                if (lorentz_norm(moved, s) != lorentz_norm(f, s))
                    out.fail(show_seq("f", f) + "; " + show_seq("pi f", moved),
                             "lorentz(P_pi f, " + s.str() + ") == lorentz(f, " +
                                 s.str() + ")",
                             lorentz_norm(moved, s).str() + " vs " +
                                 lorentz_norm(f, s).str());
            if (t == 0) {
                // The stored asymmetry witness: swapping the middle pair of
                // (4,-3,2,-1) moves the interval gauge.
                FinSeq w = FinSeq::dense({4, -3, 2, -1});
                FinSeq swapped =
                    w.permute(Permutation(std::map<Index, Index>{{2, 3}, {3, 2}}));
                if (gauge_b(hooks, w) == gauge_b(hooks, swapped))
                    out.fail(show_seq("f", w) + "; " + show_seq("pi f", swapped),
                             "normB(P_pi f) != normB(f) on the stored witness",
                             "both = " + rat(gauge_b(hooks, w)));
            }
        });
    return rep;
}

inline SuiteReport suite_lorentz_emb(const CorpusSpec& spec, const NormHooks&,
                                     unsigned threads) {
    SuiteReport rep = make_report("LORENTZ-EMB", spec);
    auto maxima = run_phase(
        rep, spec, stream_id("LORENTZ-EMB"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec);
            Rational w = rho_inf(f);
            Rational l1 = lorentz_norm(f, SpaceSpec::lorentz(1)).exact_value();
            if (!(w <= l1))
                out.fail(show_seq("f", f), "weak norm <= lorentz(f, 1)",
                         rat(w) + " > " + rat(l1));
            out.observe("C_1", w / l1);
            for (unsigned q : {2u, 3u}) {
                Rational wq = pow_rational(w, q);
                Rational nq = lorentz_norm(f, SpaceSpec::lorentz(q)).raised(q);
                if (!(wq <= Rational(q) * nq))
                    out.fail(show_seq("f", f),
                             "weak norm^q <= q lorentz(f, q)^q at q = " +
                                 std::to_string(q),
                             rat(wq) + " > " + rat(Rational(q) * nq));
                out.observe("C_" + std::to_string(q) + "^" + std::to_string(q),
                            wq / nq);
            }
        });
    for (const auto& [k, v] : maxima)
        rep.constants.emplace_back(k, rat(v) + " (empirical)");
    return rep;
}

inline SuiteReport suite_ar_pconv(const CorpusSpec& spec, const NormHooks&,
                                  unsigned threads) {
    SuiteReport rep = make_report("AR-PCONV", spec);
    auto maxima = run_phase(
        rep, spec, stream_id("AR-PCONV", 1), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, spec), g = random_seq(rng, spec);
            out.observe("kappa", rho_inf(f + g) / (rho_inf(f) + rho_inf(g)));
        });
    Rational kappa = 0;
    if (auto it = maxima.find("kappa"); it != maxima.end()) kappa = it->second;
    rep.constants.emplace_back("kappa", rat(kappa) + " (empirical)");
    if (kappa <= 0) return rep;

    // p solves kappa = 2^(1/p - 1). The family check below leaves the exact
    // domain (p-th powers of rationals are irrational), so it runs in binary
    // floating point with a relative guard; the suite documents itself as
    // the one non-exact check in the registry.
    double p = 1.0 / (1.0 + std::log2(static_cast<double>(kappa)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    rep.constants.emplace_back("p", std::string(buf) + " (empirical, from kappa)");
    double cp = std::pow(4.0, 1.0 / p);

    run_phase(rep, spec, stream_id("AR-PCONV", 2), spec.trials, threads,
              [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
                  std::size_t n = 2 + rng.below(4);
                  std::vector<FinSeq> fam;
                  FinSeq total;
                  for (std::size_t j = 0; j < n; ++j) {
                      fam.push_back(random_seq(rng, spec));
                      total = total + fam.back();
                  }
                  double lhs = static_cast<double>(rho_inf(total));
                  double sum = 0;
                  for (const auto& fj : fam)
                      sum += std::pow(static_cast<double>(rho_inf(fj)), p);
                  double rhs = cp * std::pow(sum, 1.0 / p);
                  if (lhs > rhs * (1 + 1e-9) + 1e-12) {
                      std::string in;
                      for (std::size_t j = 0; j < n; ++j)
                          in += (j ? "; " : "") +
                                show_seq(("f" + std::to_string(j + 1)).c_str(),
                                         fam[j]);
                      char lb[40], rb[40];
                      std::snprintf(lb, sizeof lb, "%.17g", lhs);
                      std::snprintf(rb, sizeof rb, "%.17g", rhs);
                      out.fail(in,
                               "rho(sum f_j) <= 4^(1/p) (sum rho(f_j)^p)^(1/p)",
                               std::string(lb) + " > " + rb);
                  }
              });
    return rep;
}

// ---------------------------------------------------------------- envelope

inline NormSelector env_selector(std::uint64_t t) {
    return NormSelector::parse(t % 2 ? "A-comb:lorentz:inf" : "B-comb:lorentz:inf");
}

inline CorpusSpec env_corpus(const CorpusSpec& spec) {
    CorpusSpec local = spec;
    local.window = IntInterval(1, 8);
    local.supp_max = std::min<std::size_t>(spec.supp_max, 4);
    local.supp_min = std::min(spec.supp_min, local.supp_max);
    local.max_den = 8;
    local.max_num = 2;
    return local;
}

inline SuiteReport suite_env_sound(const CorpusSpec& spec, const NormHooks&,
                                   unsigned threads) {
    SuiteReport rep = make_report("ENV-SOUND", spec);
    CorpusSpec local = env_corpus(spec);
    run_phase(
        rep, spec, stream_id("ENV-SOUND"), spec.trials, threads,
        [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, local);
            NormSelector sel = env_selector(t);
            EnvelopeBound env = envelope_interval(f, sel);
            Rational reval = abs(env.lower_cert.apply(f));
            if (reval != env.lower)
                out.fail(show_seq("f", f) + "; cert = " + env.lower_cert.str(),
                         "lower certificate re-evaluates to the lower bound",
                         rat(reval) + " vs " + rat(env.lower));
            if (!env.upper_cert.optimal)
                out.fail(show_seq("f", f), "decomposition LP reaches optimality",
                         "iteration cap hit");
            FinSeq rebuilt;
            Rational cost = 0;
            bool positive = true;
            for (const auto& [w, atom] : env.upper_cert.decomposition) {
                positive = positive && w > 0;
                rebuilt = rebuilt + atom.vector.scale(w);
                cost += w * atom.norm.exact_value();
            }
            if (!positive)
                out.fail(show_seq("f", f), "decomposition weights are positive",
                         "nonpositive weight in certificate");
            if (rebuilt != f)
                out.fail(show_seq("f", f) + "; " + show_seq("rebuilt", rebuilt),
                         "sum t_j g_j == f coordinate-wise", "mismatch");
            if (cost != env.upper.exact_value())
                out.fail(show_seq("f", f),
                         "sum t_j norm(g_j) == reported upper bound",
                         rat(cost) + " vs " + rat(env.upper.exact_value()));
        });
    return rep;
}

inline SuiteReport suite_env_interval(const CorpusSpec& spec, const NormHooks&,
                                      unsigned threads) {
    SuiteReport rep = make_report("ENV-INTERVAL", spec);
    CorpusSpec local = env_corpus(spec);
    run_phase(rep, spec, stream_id("ENV-INTERVAL"), spec.trials, threads,
              [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
                  FinSeq f = random_seq(rng, local);
                  EnvelopeBound env = envelope_interval(f, env_selector(t));
                  if (!(NormValue::exact(env.lower) <= env.upper))
                      out.fail(show_seq("f", f), "lower <= upper",
                               rat(env.lower) + " > " + env.upper.str());
              });
    return rep;
}

inline SuiteReport suite_env_mono(const CorpusSpec& spec, const NormHooks&,
                                  unsigned threads) {
    SuiteReport rep = make_report("ENV-MONO", spec);
    CorpusSpec local = env_corpus(spec);
    local.window = IntInterval(1, 6);
    local.supp_max = std::min<std::size_t>(local.supp_max, 3);
    local.supp_min = std::min(local.supp_min, local.supp_max);
    run_phase(
        rep, spec, stream_id("ENV-MONO"), spec.trials, threads,
        [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, local);
            NormSelector sel = env_selector(t);
            Dictionary small;
            for (Index n : f.support()) small.add(FinSeq::unit(n), sel);
            Dictionary big = small;
            IndexSet support = f.support();
            const auto& supp = support.values();
            for (std::size_t i = 0; i < supp.size(); ++i)
                for (std::size_t j = i; j < supp.size(); ++j)
                    big.add(f.project(IntInterval(supp[i], supp[j])), sel);
            FinSeq extra = random_seq(rng, local);
            big.add(extra, sel);
            NormValue u_small = upper_bound(f, sel, small).first;
            NormValue u_big = upper_bound(f, sel, big).first;
            if (!(u_big <= u_small))
                out.fail(show_seq("f", f) + "; " + show_seq("extra", extra),
                         "larger dictionary never raises the upper bound",
                         u_big.str() + " > " + u_small.str());
            std::vector<DualFunctional> coords;
            for (Index n : f.support())
                coords.push_back(DualFunctional::coordinate(n));
            Rational l_small = lower_bound(f, sel, coords).first;
            Rational l_big = lower_bound(f, sel, default_dual_family(f, sel)).first;
            if (!(l_big >= l_small))
                out.fail(show_seq("f", f),
                         "larger dual family never lowers the lower bound",
                         rat(l_big) + " < " + rat(l_small));
        });
    return rep;
}

inline SuiteReport suite_env_ucc(const CorpusSpec& spec, const NormHooks&,
                                 unsigned threads) {
    SuiteReport rep = make_report("ENV-UCC", spec);
    if (spec.trials == 0) return rep;
    // Fixed certificate chain; values frozen from the first verified run.
    static const std::pair<std::size_t, const char*> frozen[] = {
        {4, "2"},
        {8, "2354/761"},
        {16, "12033182/2436559"},
        {32, "4767136483961566/586061125622639"},
        {64, "25751290722871732627513292450/1869515039082647072915080017"},
    };
    NormSelector sel = NormSelector::parse("B-comb:lorentz:inf");
    std::optional<Rational> prev_ratio;
    for (const auto& [m, expected] : frozen) {
        ++rep.trials;
        std::string label = "m = " + std::to_string(m);
        CyclicFamily fam = cyclic_dictionary(m, sel);
        SignVector tau = SignVector::alternating(IntInterval(1, static_cast<Index>(m)));
        IndexSet window = IndexSet::interval(IntInterval(1, static_cast<Index>(m)));
        FinSeq alt = FinSeq::signed_indicator(tau, window);
        Rational up = upper_bound(alt, sel, fam.dict).first.exact_value();
        if (up != Rational(expected))
            rep.failures.push_back({rep.trials - 1, label,
                                    "upper(alt indicator) == frozen value",
                                    rat(up) + " vs " + expected});
        Rational cap = 0;
        for (const auto& atom : fam.dict.atoms()) {
            Rational an = atom.norm.exact_value();
            if (an > cap) cap = an;
        }
        cap = cap * Rational(static_cast<std::int64_t>(m)) / fam.s_m;
        if (!(up <= cap))
            rep.failures.push_back({rep.trials - 1, label,
                                    "upper(alt indicator) <= D m / s_m",
                                    rat(up) + " > " + rat(cap)});
        std::vector<Index> evens;
        for (Index n = 2; n <= static_cast<Index>(m); n += 2) evens.push_back(n);
        FinSeq plain = FinSeq::indicator(IndexSet(std::move(evens)));
        Rational low =
            lower_bound(plain, sel, default_dual_family(plain, sel)).first;
        if (low != Rational(static_cast<std::int64_t>(m / 2)))
            rep.failures.push_back({rep.trials - 1, label,
                                    "lower(even indicator) == floor(m/2)",
                                    rat(low) + " vs " + std::to_string(m / 2)});
        Rational ratio = low / up;
        if (prev_ratio && !(ratio > *prev_ratio))
            rep.failures.push_back({rep.trials - 1, label,
                                    "lower/upper ratio strictly increases in m",
                                    rat(ratio) + " <= " + rat(*prev_ratio)});
        prev_ratio = ratio;
    }
    return rep;
}

inline SuiteReport suite_lp_vertex(const CorpusSpec& spec, const NormHooks&,
                                   unsigned threads) {
    SuiteReport rep = make_report("LP-VERTEX", spec);
    CorpusSpec atoms_spec = spec;
    atoms_spec.window = IntInterval(1, 4);
    atoms_spec.supp_min = 1;
    atoms_spec.supp_max = 3;
    atoms_spec.max_den = 4;
    atoms_spec.max_num = 2;
    CorpusSpec target_spec = atoms_spec;
    target_spec.supp_max = 4;
    target_spec.max_den = 8;
    NormSelector sel = NormSelector::parse("B-comb:lorentz:inf");
    run_phase(
        rep, spec, stream_id("LP-VERTEX"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            FinSeq f = random_seq(rng, target_spec);
            Dictionary dict;
            std::size_t natoms = 1 + rng.below(6);
            for (std::size_t i = 0; i < natoms; ++i)
                dict.add(random_seq(rng, atoms_spec), sel);
            if (rng.coin())
                for (Index n : f.support()) dict.add(FinSeq::unit(n), sel);

            IndexSet rows_set = f.support();
            for (const auto& a : dict.atoms())
                rows_set = rows_set.unite(a.vector.support());
            const auto& rows = rows_set.values();
            std::vector<std::vector<Rational>> A(
                rows.size(), std::vector<Rational>(dict.size()));
            std::vector<Rational> b(rows.size()), c(dict.size());
            for (std::size_t j = 0; j < dict.size(); ++j) {
                c[j] = dict.atoms()[j].norm.exact_value();
                for (std::size_t i = 0; i < rows.size(); ++i)
                    A[i][j] = dict.atoms()[j].vector.coeff(rows[i]);
            }
            for (std::size_t i = 0; i < rows.size(); ++i) b[i] = f.coeff(rows[i]);
            std::optional<Rational> direct = lp_vertex_oracle(A, b, c);

            std::optional<Rational> lp;
            try {
                lp = upper_bound(f, sel, dict).first.exact_value();
            } catch (const lp_infeasible&) {
            }
            std::string in = show_seq("f", f) + "; atoms = " +
                             std::to_string(dict.size());
            if (lp.has_value() != direct.has_value())
                out.fail(in, "simplex and vertex scan agree on feasibility",
                         std::string(lp ? "simplex feasible" : "simplex infeasible") +
                             ", scan " + (direct ? "feasible" : "infeasible"));
            else if (lp && *lp != *direct)
                out.fail(in, "simplex optimum equals vertex-scan optimum",
                         rat(*lp) + " vs " + rat(*direct));
        });
    return rep;
}

// ----------------------------------------------------------- constructions

inline SuiteReport suite_h0_a_div(const CorpusSpec& spec, const NormHooks& hooks,
                                  unsigned threads) {
    SuiteReport rep = make_report("H0-A-DIV", spec);
    if (spec.trials == 0) return rep;
    static const std::pair<unsigned, const char*> frozen[] = {
        {2, "23/8"}, {3, "601/128"}, {4, "469/64"}, {5, "22933/2048"}};
    run_phase(rep, spec, stream_id("H0-A-DIV"), 4, threads,
              [&](std::uint64_t t, TrialRng&, TrialOut& out) {
                  auto [K, expected] = frozen[t];
                  FinSeq h0 = build_h0(H0Params::preset_a(), K).h0;
                  Rational nb = gauge_b(hooks, h0);
                  std::string label = "preset A, K = " + std::to_string(K);
                  if (nb != Rational(expected))
                      out.fail(label, "normB(h0 truncation) == frozen value",
                               rat(nb) + " vs " + expected);
                  Rational floor = pow_rational(Rational(3, 2), K);
                  if (!(nb >= floor))
                      out.fail(label, "normB(h0 truncation) >= (3/2)^K",
                               rat(nb) + " < " + rat(floor));
              });
    return rep;
}

inline SuiteReport suite_h0_b_bound(const CorpusSpec& spec, const NormHooks& hooks,
                                    unsigned threads) {
    SuiteReport rep = make_report("H0-B-BOUND", spec);
    if (spec.trials == 0) return rep;
    // Frozen on the first verified run. The profile increases strictly
    // toward 3/2 with geometrically shrinking increments; that bounded
    // monotone climb is the boundedness surrogate this suite certifies.
    static const char* frozen[] = {"79/64",      "347/256",     "1459/1024",
                                   "5987/4096",  "24259/16384", "97667/65536"};
    std::vector<Rational> values;
    for (unsigned K = 2; K <= 7; ++K) {
        ++rep.trials;
        FinSeq h0 = build_h0(H0Params::preset_b(7), K).h0;
        Rational nb = gauge_b(hooks, h0);
        std::string label = "preset B, K = " + std::to_string(K);
        if (nb != Rational(frozen[K - 2]))
            rep.failures.push_back({K - 2u, label,
                                    "normB(h0 truncation) == frozen value",
                                    rat(nb) + " vs " + frozen[K - 2]});
        if (!(nb < Rational(3, 2)))
            rep.failures.push_back({K - 2u, label,
                                    "normB(h0 truncation) < 3/2",
                                    rat(nb) + " >= 3/2"});
        values.push_back(nb);
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1]))
            rep.failures.push_back({static_cast<std::uint64_t>(i),
                                    "preset B profile",
                                    "truncation norms strictly increase",
                                    rat(values[i]) + " <= " + rat(values[i - 1])});
        if (i >= 2 &&
            !(values[i] - values[i - 1] < values[i - 1] - values[i - 2]))
            rep.failures.push_back({static_cast<std::uint64_t>(i),
                                    "preset B profile",
                                    "increments shrink",
                                    rat(values[i] - values[i - 1]) + " >= " +
                                        rat(values[i - 1] - values[i - 2])});
    }
    return rep;
}

inline SuiteReport suite_h0_osc(const CorpusSpec& spec, const NormHooks&,
                                unsigned threads) {
    SuiteReport rep = make_report("H0-OSC", spec);
    if (spec.trials == 0) return rep;
    static const char* frozen[] = {"27/16", "23/8", "601/128"};
    H0Result r = build_h0(H0Params::preset_a(), 4);
    for (unsigned k = 1; k <= 3; ++k) {
        ++rep.trials;
        std::string label = "preset A, k = " + std::to_string(k);
        Rational osc = r.h0.sum_over(r.blocks.I[k + 1]) -
                       r.h0.sum_over(r.blocks.G[k]);
        Rational half = r.h0.sum_over(r.blocks.J_minus[k]);
        if (osc != half)
            rep.failures.push_back({k - 1u, label,
                                    "oscillation equals the even-half sum",
                                    rat(osc) + " vs " + rat(half)});
        Rational mag = abs(half);
        if (mag != Rational(frozen[k - 1]))
            rep.failures.push_back({k - 1u, label,
                                    "oscillation equals the frozen value",
                                    rat(mag) + " vs " + frozen[k - 1]});
        Rational floor = pow_rational(Rational(3, 2), k);
        if (!(mag >= floor))
            rep.failures.push_back({k - 1u, label, "oscillation >= (3/2)^k",
                                    rat(mag) + " < " + rat(floor)});
    }
    return rep;
}

inline SuiteReport suite_g0_mass(const CorpusSpec& spec, const NormHooks&,
                                 unsigned threads) {
    SuiteReport rep = make_report("G0-MASS", spec);
    run_phase(
        rep, spec, stream_id("G0-MASS"), spec.trials, threads,
        [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
            H0Params p;
            if (t == 0)
                p = H0Params::preset_a(4);
            else if (t == 1)
                p = H0Params::preset_b(4);
            else {
                unsigned depth = 1 + static_cast<unsigned>(rng.below(3));
                std::vector<Rational> levels{Rational(rng.in_range(1, 3))};
                std::vector<Index> half;
                std::vector<Rational> lifts;
                for (unsigned k = 0; k < depth; ++k) {
                    std::int64_t den = rng.in_range(2, 8);
                    levels.push_back(levels.back() *
                                     Rational(rng.in_range(1, den - 1), den));
                    half.push_back(1 + static_cast<Index>(rng.below(4)));
                    std::int64_t lden = rng.in_range(2, 8);
                    Rational gap = levels[k] - levels[k + 1];
                    lifts.push_back(gap * Rational(rng.in_range(1, lden - 1), lden));
                }
                p = H0Params::custom(levels, half, lifts);
            }
            H0Result r = build_h0(p);
            Rational expected = 0;
            for (unsigned k = 1; k <= p.depth; ++k)
                expected += Rational(p.m[k]) * p.eps[k];
            if (r.g0.total() != expected)
                out.fail(show_seq("g0", r.g0),
                         "g0 total mass == sum m_k eps_k",
                         rat(r.g0.total()) + " vs " + rat(expected));
            if (r.h0 != r.f0 + r.g0)
                out.fail(show_seq("h0", r.h0), "h0 == f0 + g0", "mismatch");
        });
    return rep;
}

inline SuiteReport suite_leib_alpha(const CorpusSpec& spec, const NormHooks& hooks,
                                    unsigned threads) {
    SuiteReport rep = make_report("LEIB-ALPHA", spec);
    run_phase(
        rep, spec, stream_id("LEIB-ALPHA"), spec.trials, threads,
        [&](std::uint64_t, TrialRng& rng, TrialOut& out) {
            LeibnizData d = random_leibniz(rng);
            FinSeq alt = alternating_from_leibniz(d);
            Rational nb = gauge_b(hooks, alt);
            if (nb != d.alpha)
                out.fail(show_seq("f", alt), "normB(alternating) == alpha",
                         rat(nb) + " vs " + rat(d.alpha));
            std::vector<Index> ks;
            for (std::size_t k = 1; k <= d.blocks.size(); ++k)
                if (rng.coin()) ks.push_back(static_cast<Index>(k));
            IndexSet N(std::move(ks));
            ks.clear();
            for (std::size_t k = 1; k <= d.blocks.size(); ++k)
                if (rng.coin()) ks.push_back(static_cast<Index>(k));
            IndexSet M(std::move(ks));
            if (N == M) M = M.sym_diff(IndexSet({1}));
            FinSeq gap_vec = leibniz_subfamily(d, N) - leibniz_subfamily(d, M);
            Rational gap = gauge_b(hooks, gap_vec);
            if (!(gap >= d.omega_trunc))
                out.fail(show_seq("g", d.g) + "; " + show_set("N", N) + "; " +
                             show_set("M", M),
                         "subfamily gap >= omega_trunc",
                         rat(gap) + " < " + rat(d.omega_trunc));
        });
    return rep;
}

inline SuiteReport suite_bnorm3(const CorpusSpec& spec, const NormHooks& hooks,
                                unsigned threads) {
    SuiteReport rep = make_report("BNORM3", spec);
    run_phase(
        rep, spec, stream_id("BNORM3"), spec.trials, threads,
        [&](std::uint64_t t, TrialRng& rng, TrialOut& out) {
            std::vector<FinSeq::Entry> es;
            std::size_t count = 1 + rng.below(6);
            for (Index n : random_indices(rng, IntInterval(3, 20), count)) {
                std::int64_t den = rng.in_range(1, 16);
                es.emplace_back(n, Rational(rng.in_range(1, den), den));
            }
            FinSeq g(std::move(es));
            if (g.total() < 1)
                g = g + FinSeq::unit(21 + static_cast<Index>(rng.below(5)));
            Rational t_val(rng.below(17), 16);
            FinSeq G = FinSeq::unit(1) - FinSeq::unit(2).scale(t_val) + g;
            Rational expected = 1 + g.total();
            if (t_val != 1) expected -= t_val;
            Rational nb = gauge_b(hooks, G);
            if (nb != expected)
                out.fail(show_seq("G", G),
                         "normB(e1 - t e2 + g) == " + rat(expected) +
                             " at t = " + rat(t_val),
                         "normB = " + rat(nb));
            if (t == 0) {
                for (const Rational& tt :
                     {Rational(0), Rational(1, 2), Rational(9, 10),
                      Rational(99, 100), Rational(1)}) {
                    DiscontinuityWitness w = discontinuity_witness(32, tt);
                    NormValue combined = NormValue::max(
                        NormValue::exact(gauge_b(hooks, w.vector)),
                        lorentz_norm(w.vector, SpaceSpec::lorentz_inf()));
                    if (combined != NormValue::exact(w.predicted))
                        out.fail(show_seq("G", w.vector),
                                 "combined norm == " + rat(w.predicted) +
                                     " at t = " + rat(tt),
                                 "combined = " + combined.str());
                }
            }
        });
    return rep;
}

}  // namespace detail

/// One registered suite: the id, the module whose documented invariant it
/// owns, the 1-based position of that invariant in the module's list, a
/// restatement, and the runner.
struct SuiteDef {
    const char* id;
    const char* module_name;
    std::size_t entry;
    const char* invariant;
    SuiteReport (*run)(const CorpusSpec&, const NormHooks&, unsigned);
};

inline const std::vector<SuiteDef>& suite_registry() {
    static const std::vector<SuiteDef> defs = {
        {"TWISTED-ID", "seq_core", 1,
         "interval-functional exchange identity has zero residue",
         detail::suite_twisted_id},
        {"ORACLE-EQ", "norms", 1,
         "fast gauges equal the enumerating oracles on small supports",
         detail::suite_oracle_eq},
        {"B0-LE-L1", "norms", 2,
         "interval gauge sits below l1 and meets it on nonnegative input",
         detail::suite_b0_le_l1},
        {"B-SCHAUDER", "norms", 3,
         "interval projections never increase the interval gauge",
         detail::suite_b_schauder},
        {"QG-B", "norms", 4,
         "greedy residuals never increase the interval gauge",
         detail::suite_qg_b},
        {"B1-SUBADD", "norms", 5,
         "gauge subadditivity up to twice the weak masses; greedy sums add",
         detail::suite_b1_subadd},
        {"BS-LEM", "norms", 6,
         "shifted weak-type functional is subadditive with constant two",
         detail::suite_bs_lem},
        {"B99", "norms", 7,
         "off-greedy sums obey the |B|/(1+|A|-k) rho(f,k) tail bound",
         detail::suite_b99},
        {"ACONV", "norms", 8,
         "greedy-sum defect matches the residual and shrinks along window maxima",
         detail::suite_aconv},
        {"SYM-SPLIT", "norms", 9,
         "greedy-sum gauge and Lorentz norms are symmetric; the interval gauge is not",
         detail::suite_sym_split},
        {"LORENTZ-EMB", "norms", 10,
         "weak norm embeds into every Lorentz scale with measured constants",
         detail::suite_lorentz_emb},
        {"AR-PCONV", "norms", 11,
         "measured concavity modulus certifies the p-power triangle bound",
         detail::suite_ar_pconv},
        {"ENV-SOUND", "envelope", 1,
         "envelope certificates re-evaluate to their reported bounds",
         detail::suite_env_sound},
        {"ENV-INTERVAL", "envelope", 2,
         "envelope lower bound never exceeds the upper bound",
         detail::suite_env_interval},
        {"ENV-MONO", "envelope", 3,
         "larger dictionaries tighten uppers; larger dual families tighten lowers",
         detail::suite_env_mono},
        {"ENV-UCC", "envelope", 4,
         "alternating indicators stay envelope-small while plain ones grow",
         detail::suite_env_ucc},
        {"LP-VERTEX", "envelope", 5,
         "simplex optimum equals exhaustive vertex enumeration on small programs",
         detail::suite_lp_vertex},
        {"H0-A-DIV", "constructions", 1,
         "preset A truncation gauges diverge at rate (3/2)^K",
         detail::suite_h0_a_div},
        {"H0-B-BOUND", "constructions", 2,
         "preset B truncation gauges follow the frozen bounded profile",
         detail::suite_h0_b_bound},
        {"H0-OSC", "constructions", 3,
         "greedy-net oscillation equals the even-half sum and beats (3/2)^k",
         detail::suite_h0_osc},
        {"G0-MASS", "constructions", 4,
         "lift mass totals sum m_k eps_k exactly",
         detail::suite_g0_mass},
        {"LEIB-ALPHA", "constructions", 5,
         "alternating data realize alpha; subfamilies separate by omega",
         detail::suite_leib_alpha},
        {"BNORM3", "constructions", 6,
         "three-block vectors hit the predicted gauge on and off the jump",
         detail::suite_bnorm3},
    };
    return defs;
}

inline SuiteReport run_suite(const std::string& id, const CorpusSpec& spec,
                             const NormHooks& hooks = {}, unsigned threads = 0) {
    for (const auto& def : suite_registry())
        if (id == def.id) return def.run(spec, hooks, resolve_threads(threads));
    throw validation_error("unknown suite: '" + id + "'");
}

inline std::vector<SuiteReport> run_all(const CorpusSpec& spec,
                                        const NormHooks& hooks = {},
                                        unsigned threads = 0) {
    std::vector<SuiteReport> out;
    unsigned t = resolve_threads(threads);
    for (const auto& def : suite_registry())
        out.push_back(def.run(spec, hooks, t));
    return out;
}

inline bool all_passed(const std::vector<SuiteReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed()) return false;
    return true;
}

/// Structured-text report: one object per suite, exact rationals as "p/q",
/// no timing fields, byte-stable across runs and worker counts.
inline std::string report_text(const SuiteReport& r) {
    std::string out = "{\n";
    out += "  suite: \"" + r.suite + "\"\n";
    out += "  seed: " + std::to_string(r.seed) + "\n";
    out += "  trials: " + std::to_string(r.trials) + "\n";
    if (r.failures.empty()) {
        out += "  failures: []\n";
    } else {
        out += "  failures: [\n";
        for (const auto& f : r.failures) {
            out += "    {\n";
            out += "      trial: " + std::to_string(f.trial) + "\n";
            out += "      input: " + f.input + "\n";
            out += "      expected: " + f.expected + "\n";
            out += "      observed: " + f.observed + "\n";
            out += "    }\n";
        }
        out += "  ]\n";
    }
    if (r.constants.empty()) {
        out += "  constants: {}\n";
    } else {
        out += "  constants: {\n";
        for (const auto& [k, v] : r.constants) out += "    " + k + ": " + v + "\n";
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

inline std::string report_text(const std::vector<SuiteReport>& reports) {
    std::string out;
    for (const auto& r : reports) out += report_text(r);
    return out;
}

}  // namespace greedylab
