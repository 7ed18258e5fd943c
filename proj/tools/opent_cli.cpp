// opent command-line front end.
//
// Subcommands: compute, probe, scan, check-identity, selftest.
// Exit codes: 0 success / consistent, 1 violation (probe, check-identity),
// 2 usage, parse, or domain error.

#include <opent/opent.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Shared sampling flags. Each option remembers whether the user set it so
// claim-specific defaults survive a partial override.
struct ConfigFlags {
    std::size_t dim = 3;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    double spec_lo = 0.1, spec_hi = 10.0;
    double ratio_lo = 0.1, ratio_hi = 10.0;

    CLI::Option* o_dim = nullptr;
    CLI::Option* o_trials = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_tol = nullptr;
    CLI::Option* o_spec_lo = nullptr;
    CLI::Option* o_spec_hi = nullptr;
    CLI::Option* o_ratio_lo = nullptr;
    CLI::Option* o_ratio_hi = nullptr;

    void attach(CLI::App* cmd) {
        o_dim = cmd->add_option("--dim", dim, "Matrix dimension");
        o_trials = cmd->add_option("--trials", trials, "Number of trials");
        o_seed = cmd->add_option("--seed", seed, "RNG seed");
        o_tol = cmd->add_option("--tol", tol, "Relative violation tolerance");
        o_spec_lo = cmd->add_option("--spec-lo", spec_lo, "Spectrum lower bound");
        o_spec_hi = cmd->add_option("--spec-hi", spec_hi, "Spectrum upper bound");
        o_ratio_lo = cmd->add_option("--ratio-lo", ratio_lo, "Ratio lower bound");
        o_ratio_hi = cmd->add_option("--ratio-hi", ratio_hi, "Ratio upper bound");
    }

    // Overlay set flags onto a claim's default config.
    opent::ProbeConfig merge(opent::ProbeConfig cfg) const {
        if (o_dim->count() > 0) cfg.dim = dim;
        if (o_trials->count() > 0) cfg.trials = trials;
        if (o_seed->count() > 0) cfg.seed = seed;
        if (o_tol->count() > 0) cfg.tol_rel = tol;
        double slo = o_spec_lo->count() > 0 ? spec_lo : cfg.spectrum.lo;
        double shi = o_spec_hi->count() > 0 ? spec_hi : cfg.spectrum.hi;
        double rlo = o_ratio_lo->count() > 0 ? ratio_lo : cfg.ratio.lo;
        double rhi = o_ratio_hi->count() > 0 ? ratio_hi : cfg.ratio.hi;
        cfg.spectrum = opent::Interval::closed(slo, shi);
        cfg.ratio = opent::Interval::closed(rlo, rhi);
        return cfg;
    }
};

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw opent::Error("cannot open output file: " + out_path);
    os << text;
}

// h(t) = t^beta with large |beta| amplifies conditioning beyond what the
// samplers control for; the CLI rejects it up front.
void require_cli_beta(double beta) {
    if (!(beta >= -2.0 && beta <= 2.0))
        throw opent::ParameterOutOfRange("beta outside supported CLI range [-2, 2]");
}

int cmd_compute(const std::string& spec_str, const std::string& a_path,
                const std::string& b_path, bool normalize, const std::string& out_path) {
    opent::EntropySpec spec = opent::parse_entropy_spec(spec_str);
    if (spec.family == opent::EntropyFamily::RelativeAlphaBeta ||
        spec.family == opent::EntropyFamily::TsallisAlphaBeta)
        require_cli_beta(spec.beta);

    opent::SymmetricMatrix a = opent::load_matrix(a_path);
    opent::SymmetricMatrix b = opent::load_matrix(b_path);
    if (normalize) {
        double ta = a.trace(), tb = b.trace();
        if (ta <= 0.0 || tb <= 0.0)
            throw opent::NotStrictlyPositive("cannot normalize matrix with nonpositive trace",
                                             std::min(ta, tb));
        a = a * (1.0 / ta);
        b = b * (1.0 / tb);
    }

    opent::SymmetricMatrix result = spec.evaluate(a, b);
    opent::ordered_json j;
    j["matrix"] = opent::rows_to_json(result);
    j["trace"] = result.trace();
    j["min_eigenvalue"] = opent::min_eigenvalue(result);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_probe(const std::string& claim_id, const ConfigFlags& flags,
              const std::string& out_path) {
    opent::Claim claim = opent::find_claim(claim_id);
    opent::ProbeConfig cfg = flags.merge(claim.config);
    opent::ProbeReport report = claim.run(cfg);
    write_output(out_path, opent::report_to_json(report).dump(2) + "\n");
    return report.verdict == opent::Verdict::Violated ? 1 : 0;
}

int cmd_scan(const std::string& family_str, const std::vector<double>& alphas,
             const std::vector<double>& betas, const ConfigFlags& flags,
             const std::string& out_path) {
    for (double b : betas) require_cli_beta(b);
    opent::ScanFamily family = family_str == "Tab" ? opent::ScanFamily::TsallisAlphaBeta
                                                   : opent::ScanFamily::RelativeAlphaBeta;
    opent::ProbeConfig cfg = flags.merge(opent::ProbeConfig{});
    std::vector<opent::ScanCell> cells = opent::scan_regions(family, alphas, betas, cfg);
    std::ostringstream os;
    opent::write_scan_csv(cells, os);
    write_output(out_path, os.str());
    return 0;
}

int cmd_check_identity(const std::string& rho_path, const std::string& sigma_path) {
    opent::SymmetricMatrix rho = opent::load_matrix(rho_path);
    opent::SymmetricMatrix sigma = opent::load_matrix(sigma_path);
    opent::SuperoperatorIdentity id = opent::superoperator_identity_check(rho, sigma);
    opent::ordered_json j;
    j["lhs"] = id.lhs;
    j["rhs"] = id.rhs;
    j["residual"] = id.residual;
    std::cout << j.dump(2) << "\n";
    return id.residual <= 1e-9 * std::max(1.0, std::abs(id.rhs)) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical probes for operator entropies and perspective convexity"};
    app.require_subcommand(1);

    // compute
    std::string c_spec, c_a, c_b, c_out;
    bool c_normalize = false;
    CLI::App* compute = app.add_subcommand("compute", "Evaluate an entropy on two matrix files");
    compute->add_option("spec", c_spec, "Entropy spec (S, Sq:q, Sab:a,b, T:lam, Tab:a,b)")->required();
    compute->add_option("a", c_a, "First matrix JSON file")->required();
    compute->add_option("b", c_b, "Second matrix JSON file")->required();
    compute->add_flag("--normalize", c_normalize, "Scale inputs to unit trace first");
    compute->add_option("--out", c_out, "Output file (default stdout)");

    // probe
    std::string p_claim, p_out;
    ConfigFlags p_flags;
    CLI::App* probe = app.add_subcommand("probe", "Run a probe campaign for a claim id");
    probe->add_option("claim", p_claim, "Claim id (see README) or adhoc:<fn>:<direction>")->required();
    p_flags.attach(probe);
    probe->add_option("--out", p_out, "Report file (default stdout)");

    // scan
    std::string s_family, s_out;
    std::vector<double> s_alphas, s_betas;
    ConfigFlags s_flags;
    CLI::App* scan = app.add_subcommand("scan", "Scan an (alpha, beta) grid in both directions");
    scan->add_option("--family", s_family, "Tab (Tsallis) or Sab (relative)")
        ->required()
        ->check(CLI::IsMember({"Tab", "Sab"}));
    scan->add_option("--alpha", s_alphas, "Comma-separated alpha grid")->delimiter(',');
    scan->add_option("--beta", s_betas, "Comma-separated beta grid")->delimiter(',');
    s_flags.attach(scan);
    scan->add_option("--out", s_out, "CSV file (default stdout)");

    // check-identity
    std::string i_rho, i_sigma;
    CLI::App* check = app.add_subcommand("check-identity",
                                         "Verify the superoperator entropy identity");
    check->add_option("rho", i_rho, "Density-like matrix JSON file")->required();
    check->add_option("sigma", i_sigma, "Density-like matrix JSON file")->required();

    // selftest
    std::size_t t_trials = 100;
    CLI::App* selftest = app.add_subcommand("selftest", "Run every registered claim");
    selftest->add_option("--trials", t_trials, "Trials per claim (default 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed())
            return cmd_compute(c_spec, c_a, c_b, c_normalize, c_out);
        if (probe->parsed())
            return cmd_probe(p_claim, p_flags, p_out);
        if (scan->parsed())
            return cmd_scan(s_family, s_alphas, s_betas, s_flags, s_out);
        if (check->parsed())
            return cmd_check_identity(i_rho, i_sigma);
        if (selftest->parsed()) {
            if (t_trials < 1)
                throw opent::ParameterOutOfRange("selftest requires trials >= 1");
            return opent::run_selftest(std::cout, t_trials) ? 0 : 1;
        }
    } catch (const opent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
