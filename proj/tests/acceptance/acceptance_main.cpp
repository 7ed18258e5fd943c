// Acceptance gate: one pass/fail line per criterion, each with its runtime
// budget. Exit 0 iff every line passes. Criteria 12-14 and the CLI contract
// drive the installed binary through std::system, so --cli is required.

#include <opent/opent.hpp>

#include "../test_oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace opent;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args;
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::pair<std::string, ProbeReport>> run_prefix(const std::string& prefix,
                                                            std::size_t trials) {
    std::vector<std::pair<std::string, ProbeReport>> out;
    for (const Claim& c : registered_claims()) {
        if (c.id.rfind(prefix, 0) != 0) continue;
        ProbeConfig cfg = c.config;
        cfg.trials = trials;
        out.emplace_back(c.id, c.run(cfg));
    }
    return out;
}

Outcome summarize_prefix(const std::vector<std::pair<std::string, ProbeReport>>& reps,
                         std::size_t expected) {
    std::size_t consistent = 0;
    std::ostringstream bad;
    double worst = 0.0;
    for (const auto& [id, rep] : reps) {
        worst = std::min(worst, rep.worst_margin);
        if (rep.verdict == Verdict::Consistent) {
            ++consistent;
        } else {
            bad << " " << id << "(worst=" << fmt(rep.worst_margin)
                << ", violations=" << rep.violations << ")";
        }
    }
    Outcome o;
    o.ok = reps.size() == expected && consistent == expected;
    std::ostringstream d;
    d << consistent << "/" << reps.size() << " claims consistent, worst margin "
      << fmt(worst);
    if (!o.ok) d << "; violated:" << bad.str();
    o.detail = d.str();
    return o;
}

Outcome c1_functional_calculus() {
    struct Pair {
        std::function<double(double)> scalar;
        ScalarFnPtr fn;
    };
    std::vector<Pair> fns;
    fns.push_back({[](double t) { return std::log(t); }, log_fn()});
    fns.push_back({[](double t) { return t * t; }, power(2.0)});
    fns.push_back({[](double t) { return std::sqrt(t); }, power(0.5)});
    fns.push_back({[](double t) { return 1.0 / t; }, power(-1.0)});
    fns.push_back({[](double t) { return (std::pow(t, 1.5) - 1.0) / 1.5; }, deformed_log(1.5)});
    fns.push_back(
        {[](double t) { return (std::pow(t, -0.5) - 1.0) / -0.5; }, deformed_log(-0.5)});

    std::size_t cases = 0, bad = 0;
    double worst = 0.0;
    for (std::size_t t = 0; t < 500; ++t) {
        SplitMix64 rng = trial_stream(42, 1000 + t);
        const std::size_t dim = 2 + t % 4;
        SymmetricMatrix diag(dim), want(dim);
        const Pair& p = fns[t % fns.size()];
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = rng.log_uniform(0.1, 10.0);
            diag.set(i, i, e);
            want.set(i, i, p.scalar(e));
        }
        const double r = oracle::rel_diff(apply_spectral(*p.fn, diag), want);
        worst = std::max(worst, r);
        if (r > 1e-10) ++bad;
        ++cases;
    }
    for (std::size_t t = 0; t < 500; ++t) {
        SplitMix64 rng = trial_stream(42, 2000 + t);
        SymmetricMatrix a = random_spd(2, Interval::closed(0.1, 10.0), rng);
        const Pair& p = fns[t % fns.size()];
        const double r = oracle::rel_diff(apply_spectral(*p.fn, a), oracle::apply2x2(p.scalar, a));
        worst = std::max(worst, r);
        if (r > 1e-10) ++bad;
        ++cases;
    }
    Outcome o;
    o.ok = cases == 1000 && bad == 0;
    o.detail = std::to_string(cases) + " closed-form cases, worst rel err " + fmt(worst);
    return o;
}

Outcome c2_s_concavity() {
    Outcome o;
    o.ok = true;
    double worst = 0.0;
    for (std::size_t dim : {2u, 3u, 5u}) {
        ProbeConfig cfg;
        cfg.dim = dim;
        cfg.trials = 1000;
        ProbeReport rep = probe_joint(joint_map(EntropySpec::relative()), Direction::Concave, cfg);
        worst = std::min(worst, rep.worst_margin);
        o.ok = o.ok && rep.verdict == Verdict::Consistent && rep.worst_margin >= -1e-8;
    }
    o.detail = "dims {2,3,5} x 1000 trials, worst margin " + fmt(worst);
    return o;
}

Outcome c6_boundary() {
    Outcome o;
    o.ok = true;
    std::ostringstream d;
    const Interval search = Interval::closed(0.01, 100.0);
    for (double q : {0.25, 0.5, 0.75}) {
        const double iq = iq_boundary(Log{}, q, search);
        const double jq = jq_upper(q);
        const double rel = std::abs(iq - jq) / jq;
        o.ok = o.ok && rel <= 1e-4;
        if (q == 0.5) o.ok = o.ok && std::abs(iq - 1.0) <= 1e-6;
        d << " q=" << q << ":" << fmt(rel);
    }
    o.detail = "boundary vs closed form, rel err" + d.str();
    return o;
}

Outcome c8_transpose_log() {
    ProbeConfig cfg;
    cfg.trials = 500;
    ProbeReport rep = probe_operator_convexity(transpose(log_fn()), Direction::Concave, cfg);

    SymmetricMatrix rho(2);
    rho.set(0, 0, 0.9);
    rho.set(1, 1, 0.1);
    const double got = von_neumann_entropy(rho);
    const double want = -(0.9 * std::log(0.9) + 0.1 * std::log(0.1));
    Outcome o;
    o.ok = rep.verdict == Verdict::Consistent && std::abs(got - want) <= 1e-6;
    o.detail = "worst margin " + fmt(rep.worst_margin) + ", entropy |err| " +
               fmt(std::abs(got - want));
    return o;
}

Outcome c9_trace_identities() {
    double worst_a = 0.0, worst_b = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t < 200; ++t) {
        SplitMix64 rng = trial_stream(42, 5000 + t);
        oracle::CommutingPair p = oracle::commuting_pair(2 + t % 2, Interval::closed(0.1, 1.0),
                                                         rng);
        const double h = quantum_relative_entropy(p.a, p.b);
        const double tr_s = relative_operator_entropy(p.a, p.b).trace();
        const double rel = std::abs(h + tr_s) / std::max(1.0, std::abs(h));
        worst_a = std::max(worst_a, rel);
        ok = ok && rel <= 1e-10;
    }
    for (std::size_t t = 0; t < 200; ++t) {
        SplitMix64 rng = trial_stream(42, 7000 + t);
        const std::size_t dim = 2 + t % 2;
        SymmetricMatrix rho = random_spd(dim, Interval::closed(0.1, 10.0), rng);
        SymmetricMatrix sigma = random_spd(dim, Interval::closed(0.1, 10.0), rng);
        SuperoperatorIdentity id = superoperator_identity_check(rho, sigma);
        const double rel = id.residual / std::max(1.0, std::abs(id.rhs));
        worst_b = std::max(worst_b, rel);
        ok = ok && id.residual <= 1e-9 * std::max(1.0, std::abs(id.rhs));
    }
    Outcome o;
    o.ok = ok;
    o.detail = "commuting worst " + fmt(worst_a) + ", superoperator worst " + fmt(worst_b);
    return o;
}

Outcome c10_hpj() {
    const Power pow2{2.0};
    const DeformedLog dlog15{1.5};
    double worst = 0.0;
    std::size_t bad = 0;
    for (std::size_t t = 0; t < 1000; ++t) {
        SplitMix64 rng = trial_stream(42, 11000 + t);
        SymmetricMatrix x1 = random_spd(3, Interval::closed(0.1, 10.0), rng);
        SymmetricMatrix x2 = random_spd(3, Interval::closed(0.1, 10.0), rng);
        Matrix g1(3, 3), g2(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) {
                g1(i, k) = rng.gaussian();
                g2(i, k) = rng.gaussian();
            }
        SymmetricMatrix s = symmetric_part(g1.transpose() * g1 + g2.transpose() * g2);
        const double u = rng.uniform(0.3, 1.0);
        const double k = std::sqrt(u / spectral_norm(s));
        Matrix t1 = g1 * k, t2 = g2 * k;
        for (const ScalarFn* f : {static_cast<const ScalarFn*>(&pow2),
                                  static_cast<const ScalarFn*>(&dlog15)}) {
            const double margin = hpj_check(*f, x1, x2, t1, t2, 1e-8).normalized();
            worst = std::min(worst, margin);
            if (margin < -1e-8) ++bad;
        }
    }
    Outcome o;
    o.ok = bad == 0;
    o.detail = "2000 checks over 1000 contraction pairs, worst margin " + fmt(worst);
    return o;
}

Outcome c11_reductions() {
    double w_sq = 0.0, w_s0 = 0.0, w_t = 0.0, w_lim = 0.0;
    for (std::size_t t = 0; t < 100; ++t) {
        SplitMix64 rng = trial_stream(42, 9000 + t);
        SymmetricMatrix a = random_spd(3, Interval::closed(0.5, 2.0), rng);
        SymmetricMatrix b = random_spd(3, Interval::closed(0.5, 2.0), rng);
        w_sq = std::max(w_sq, oracle::rel_diff(relative_alpha_beta_entropy(0.5, 1.0, a, b),
                                               generalized_relative_entropy(0.5, a, b)));
        w_s0 = std::max(w_s0, oracle::rel_diff(relative_alpha_beta_entropy(0.0, 1.0, a, b),
                                               relative_operator_entropy(a, b)));
        w_t = std::max(w_t, oracle::rel_diff(tsallis_alpha_beta_entropy(1.5, 1.0, a, b),
                                             tsallis_entropy(1.5, a, b)));
        w_lim = std::max(w_lim, oracle::rel_diff(tsallis_entropy(1e-5, a, b),
                                                 relative_operator_entropy(a, b)));
    }
    Outcome o;
    o.ok = w_sq <= 1e-10 && w_s0 <= 1e-10 && w_t <= 1e-10 && w_lim <= 1e-4;
    o.detail = "Sab->Sq " + fmt(w_sq) + ", Sab->S " + fmt(w_s0) + ", Tab->T " + fmt(w_t) +
               ", T(1e-5)~S " + fmt(w_lim);
    return o;
}

Outcome c12_negative_control(const std::string& cli) {
    const std::string out = "acc_tmp_negative.json";
    const int rc = run_cli(cli, "probe adhoc:pow:3:opconvex --out " + out);
    Outcome o;
    if (rc != 1) {
        o.detail = "expected exit 1, got " + std::to_string(rc);
        std::remove(out.c_str());
        return o;
    }
    ordered_json j = ordered_json::parse(slurp(out));
    std::remove(out.c_str());
    if (j["verdict"] != "Violated" || j["counterexamples"].empty()) {
        o.detail = "report lacks a violated verdict with counterexamples";
        return o;
    }
    const ordered_json& ce = j["counterexamples"][0];
    SymmetricMatrix a1 = matrix_from_json(ce["matrices"]["A1"]);
    SymmetricMatrix a2 = matrix_from_json(ce["matrices"]["A2"]);
    const double c = ce["c"].get<double>();
    SymmetricMatrix mix = a1 * c + a2 * (1.0 - c);
    SymmetricMatrix lhs = apply_spectral(Power{3.0}, mix);
    SymmetricMatrix rhs =
        apply_spectral(Power{3.0}, a1) * c + apply_spectral(Power{3.0}, a2) * (1.0 - c);
    const double margin = loewner_leq(lhs, rhs, 0.0).normalized();
    o.ok = a1.dim() >= 2 && margin < -1e-6;
    o.detail = "exit 1, recomputed counterexample margin " + fmt(margin) + " at dim " +
               std::to_string(a1.dim());
    return o;
}

Outcome c13_determinism(const std::string& cli) {
    const std::string f1 = "acc_tmp_det1.json", f2 = "acc_tmp_det2.json";
    const int r1 = run_cli(cli, "probe thm2.6-fujii:S:concave --out " + f1);
    const int r2 = run_cli(cli, "probe thm2.6-fujii:S:concave --out " + f2);
    const std::string b1 = slurp(f1), b2 = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    Outcome o;
    o.ok = r1 == 0 && r2 == 0 && !b1.empty() && b1 == b2;
    o.detail = "exits " + std::to_string(r1) + "/" + std::to_string(r2) + ", reports " +
               (b1 == b2 ? "byte-identical" : "differ");
    return o;
}

Outcome c14_selftest(const std::string& cli) {
    const std::string log = "acc_tmp_selftest.txt";
    const int rc = run_cli(cli, "selftest --trials 100 > " + log + " 2>&1");
    Outcome o;
    o.ok = rc == 0;
    std::ostringstream d;
    d << "exit " << rc;
    if (rc != 0) {
        std::istringstream is(slurp(log));
        std::string line;
        std::size_t fails = 0;
        std::string first;
        while (std::getline(is, line))
            if (line.rfind("FAIL", 0) == 0) {
                if (fails == 0) first = line;
                ++fails;
            }
        d << ", " << fails << " failing claims";
        if (!first.empty()) d << " (first: " << first << ")";
    }
    std::remove(log.c_str());
    o.detail = d.str();
    return o;
}

Outcome extra_cli_contract(const std::string& cli) {
    Outcome o;
    std::ostringstream d;
    bool ok = true;

    int rc = run_cli(cli, "probe nope:claim --out acc_tmp_unused.json 2>/dev/null");
    ok = ok && rc == 2;
    d << "unknown claim exit " << rc;
    rc = run_cli(cli, "compute Nope:1 acc_tmp_A.json acc_tmp_B.json 2>/dev/null");
    ok = ok && rc == 2;
    d << ", bad spec exit " << rc;

    SplitMix64 rng = trial_stream(42, 31337);
    SymmetricMatrix a = random_spd(3, Interval::closed(0.1, 10.0), rng);
    SymmetricMatrix b = random_spd(3, Interval::closed(0.1, 10.0), rng);
    save_matrix(a, "acc_tmp_A.json");
    save_matrix(b, "acc_tmp_B.json");

    rc = run_cli(cli, "compute S acc_tmp_A.json acc_tmp_B.json --out acc_tmp_S.json");
    ok = ok && rc == 0;
    SymmetricMatrix s_cli = matrix_from_json(ordered_json::parse(slurp("acc_tmp_S.json")));
    const double round_trip = (s_cli - relative_operator_entropy(a, b)).max_abs();
    ok = ok && round_trip == 0.0;
    d << ", compute round-trip max |diff| " << fmt(round_trip);

    rc = run_cli(cli, "compute Sq:0 acc_tmp_A.json acc_tmp_B.json --out acc_tmp_S0.json");
    const bool same = slurp("acc_tmp_S0.json") == slurp("acc_tmp_S.json");
    ok = ok && rc == 0 && same;
    d << ", Sq:0 output " << (same ? "matches S" : "differs from S");

    rc = run_cli(cli, "compute T:1 acc_tmp_A.json acc_tmp_B.json --out acc_tmp_T1.json");
    SymmetricMatrix t1 = matrix_from_json(ordered_json::parse(slurp("acc_tmp_T1.json")));
    const double t1_err = oracle::rel_diff(t1, b - a);
    ok = ok && rc == 0 && t1_err <= 1e-12;
    d << ", T:1 vs B-A rel " << fmt(t1_err);

    for (const char* f : {"acc_tmp_A.json", "acc_tmp_B.json", "acc_tmp_S.json",
                          "acc_tmp_S0.json", "acc_tmp_T1.json", "acc_tmp_unused.json"})
        std::remove(f);
    o.ok = ok;
    o.detail = d.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    if (cli.empty()) {
        std::cerr << "usage: opent_acceptance --cli <path-to-opent-binary>\n";
        return 2;
    }

    struct Item {
        std::string label;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items = {
        {"criterion 1: functional calculus closed forms", 1.0, c1_functional_calculus},
        {"criterion 2: joint concavity of S", 10.0, c2_s_concavity},
        {"criterion 3: Tab joint convexity grid", 20.0,
         [] { return summarize_prefix(run_prefix("thm2.2:", 500), 9); }},
        {"criterion 4: T convexity and concavity ranges", 15.0,
         [] { return summarize_prefix(run_prefix("thm2.3:", 500), 7); }},
        {"criterion 5: deformed-log operator convexity", 10.0,
         [] { return summarize_prefix(run_prefix("lem2.1:", 500), 7); }},
        {"criterion 6: scalar convexity boundary", 1.0, c6_boundary},
        {"criterion 7: confined Sq/Sab joint convexity", 15.0,
         [] {
             auto reps = run_prefix("cor3.8:", 500);
             auto more = run_prefix("thm3.9:", 500);
             reps.insert(reps.end(), more.begin(), more.end());
             return summarize_prefix(reps, 9);
         }},
        {"criterion 8: transpose(log) concavity and entropy value", 5.0, c8_transpose_log},
        {"criterion 9: trace and superoperator identities", 10.0, c9_trace_identities},
        {"criterion 10: two-operator Jensen contraction step", 5.0, c10_hpj},
        {"criterion 11: family reduction identities", 5.0, c11_reductions},
        {"criterion 12: negative control with recomputable counterexample", 5.0,
         [&] { return c12_negative_control(cli); }},
        {"criterion 13: probe determinism", 5.0, [&] { return c13_determinism(cli); }},
        {"criterion 14: full selftest", 60.0, [&] { return c14_selftest(cli); }},
        {"extra: CLI compute/probe contract", 30.0, [&] { return extra_cli_contract(cli); }},
    };

    int failures = 0;
    for (const Item& item : items) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = item.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= item.budget;
        const bool pass = o.ok && in_budget;
        std::printf("%s %s: %s (%.2f s, budget %.0f s)%s\n", pass ? "PASS" : "FAIL",
                    item.label.c_str(), o.detail.c_str(), secs, item.budget,
                    in_budget ? "" : " [budget exceeded]");
        if (!pass) ++failures;
    }

    if (failures > 0) {
        std::printf("acceptance: %d of %zu lines failed\n", failures, items.size());
        return 1;
    }
    std::printf("acceptance: all %zu lines passed\n", items.size());
    return 0;
}
