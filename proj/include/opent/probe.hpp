#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "opent/entropy.hpp"
#include "opent/errors.hpp"
#include "opent/interval.hpp"
#include "opent/matrix.hpp"
#include "opent/perspective.hpp"
#include "opent/random_spd.hpp"
#include "opent/rng.hpp"
#include "opent/scalar_fn.hpp"
#include "opent/spectral.hpp"

namespace opent {

enum class Direction { Convex, Concave };

inline const char* to_string(Direction d) {
    return d == Direction::Convex ? "Convex" : "Concave";
}

enum class Verdict { Consistent, Violated };

inline const char* to_string(Verdict v) {
    return v == Verdict::Consistent ? "Consistent" : "Violated";
}

struct ProbeConfig {
    std::size_t dim = 3;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    double tol_rel = 1e-8;
    Interval spectrum{0.1, 10.0};
    Interval ratio{0.1, 10.0};
    // Weight policy: c uniform on [0,1], except every endpoint_every-th trial
    // forces c from {0, 0.5, 1} cycling. 0 disables forcing.
    std::size_t endpoint_every = 10;
};

struct Counterexample {
    std::uint64_t trial = 0;  // seed offset: the substream is seed ^ trial
    double c = 0.0;
    std::size_t dim = 0;
    double margin = 0.0;  // normalized
    std::vector<std::pair<std::string, SymmetricMatrix>> matrices;
};

struct ProbeReport {
    std::string claim;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t grazing = 0;  // normalized margin in [-tol_rel, 0)
    std::size_t endpoint_violations = 0;
    double worst_margin = 0.0;  // most negative normalized margin
    std::vector<Counterexample> counterexamples;  // worst 10, margin ascending
    Verdict verdict = Verdict::Consistent;
};

// Two-variable map (A, B) -> h(A)^{1/2} f(h(A)^{-1/2} B h(A)^{-1/2}) h(A)^{1/2};
// null h means the plain perspective. negate flips the sign of the output,
// which swaps the map's convexity direction.
struct JointMap {
    ScalarFnPtr f;
    ScalarFnPtr h;
    bool negate = false;
    std::string name;

    SymmetricMatrix eval(const SymmetricMatrix& a, const SymmetricMatrix& b) const {
        SymmetricMatrix r = h ? generalized_perspective(*f, *h, a, b) : perspective(*f, a, b);
        if (negate) r *= -1.0;
        return r;
    }
};

inline JointMap joint_map(ScalarFnPtr f) {
    std::string name = "perspective(" + f->spec_string() + ")";
    return JointMap{std::move(f), nullptr, false, std::move(name)};
}

inline JointMap joint_map(ScalarFnPtr f, ScalarFnPtr h) {
    std::string name = "perspective(" + f->spec_string() + " delta " + h->spec_string() + ")";
    return JointMap{std::move(f), std::move(h), false, std::move(name)};
}

inline JointMap joint_map(const EntropySpec& spec) {
    return JointMap{spec.f(), spec.h(), false, spec.spec_string()};
}

inline JointMap negated(JointMap m) {
    m.negate = !m.negate;
    m.name = "neg(" + m.name + ")";
    return m;
}

namespace detail {

struct TrialOutcome {
    double c = 0.0;
    LoewnerResult res;
    std::vector<std::pair<std::string, SymmetricMatrix>> witnesses;
};

inline double draw_weight(const ProbeConfig& cfg, std::size_t trial, SplitMix64& rng) {
    if (cfg.endpoint_every > 0 && trial % cfg.endpoint_every == 0) {
        constexpr double forced[3] = {0.0, 0.5, 1.0};
        return forced[(trial / cfg.endpoint_every) % 3];
    }
    return rng.uniform01();
}

// Runs cfg.trials independent trials, each on substream seed ^ trial index,
// and aggregates in trial order. Violating trials are retried at dim 2 on
// the same substream; the smaller witness is kept when it still violates.
// Reported counterexamples are the 10 worst by normalized margin.
template <typename TrialFn>
ProbeReport run_campaign(std::string claim, const ProbeConfig& cfg, TrialFn&& trial) {
    if (cfg.trials < 1) throw ParameterOutOfRange("probe: trials must be >= 1");
    if (cfg.dim < 2 || cfg.dim > 8) throw ParameterOutOfRange("probe: dim must be in [2, 8]");

    ProbeReport rep;
    rep.claim = std::move(claim);
    rep.trials = cfg.trials;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<Counterexample> candidates;

    for (std::size_t i = 0; i < cfg.trials; ++i) {
        SplitMix64 rng = trial_stream(cfg.seed, i);
        TrialOutcome out;
        try {
            out = trial(cfg.dim, i, rng);
        } catch (const DomainViolation& e) {
            throw DomainViolation("probe '" + rep.claim + "' aborted at trial " +
                                      std::to_string(i) + ": " + e.what(),
                                  e.value, e.domain_lo, e.domain_hi);
        }
        const double nm = out.res.normalized();
        worst = std::min(worst, nm);
        if (nm < -cfg.tol_rel) {
            ++rep.violations;
            if (out.c == 0.0 || out.c == 1.0) ++rep.endpoint_violations;
            Counterexample ce;
            ce.trial = i;
            ce.c = out.c;
            ce.dim = cfg.dim;
            ce.margin = nm;
            ce.matrices = std::move(out.witnesses);
            if (cfg.dim > 2) {
                try {
                    SplitMix64 rng2 = trial_stream(cfg.seed, i);
                    TrialOutcome small = trial(2, i, rng2);
                    const double nm2 = small.res.normalized();
                    if (nm2 < -cfg.tol_rel) {
                        ce.c = small.c;
                        ce.dim = 2;
                        ce.margin = nm2;
                        ce.matrices = std::move(small.witnesses);
                    }
                } catch (const Error&) {
                    // keep the original-dimension witness
                }
            }
            candidates.push_back(std::move(ce));
        } else if (nm < 0.0) {
            ++rep.grazing;
        }
    }

    rep.worst_margin = worst;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Counterexample& a, const Counterexample& b) {
                         if (a.margin != b.margin) return a.margin < b.margin;
                         return a.trial < b.trial;
                     });
    if (candidates.size() > 10) candidates.resize(10);
    rep.counterexamples = std::move(candidates);
    rep.verdict = rep.violations > 0 ? Verdict::Violated : Verdict::Consistent;
    return rep;
}

}  // namespace detail

// Eq. (1.1) check: f(c A1 + (1-c) A2) against c f(A1) + (1-c) f(A2) in the
// claimed direction, over seeded SPD samples from cfg.spectrum.
inline ProbeReport probe_operator_convexity(const ScalarFn& f, Direction direction,
                                            const ProbeConfig& cfg, std::string name = "") {
    if (!f.domain().contains(Interval::closed(cfg.spectrum.lo, cfg.spectrum.hi)))
        throw DomainMismatch("probe_operator_convexity: spectrum " +
                             Interval::closed(cfg.spectrum.lo, cfg.spectrum.hi).to_string() +
                             " not contained in domain of " + f.spec_string());

    auto trial = [&](std::size_t dim, std::size_t idx, SplitMix64& rng) {
        SymmetricMatrix a1 = random_spd(dim, cfg.spectrum, rng);
        SymmetricMatrix a2 = random_spd(dim, cfg.spectrum, rng);
        const double c = detail::draw_weight(cfg, idx, rng);
        SymmetricMatrix mix = a1 * c + a2 * (1.0 - c);
        SymmetricMatrix f_mix = apply_spectral(f, mix);
        SymmetricMatrix combo = apply_spectral(f, a1) * c + apply_spectral(f, a2) * (1.0 - c);
        detail::TrialOutcome out;
        out.c = c;
        out.res = direction == Direction::Convex ? loewner_leq(f_mix, combo, cfg.tol_rel)
                                                 : loewner_leq(combo, f_mix, cfg.tol_rel);
        out.witnesses = {{"A1", a1}, {"A2", a2}};
        return out;
    };

    if (name.empty())
        name = std::string("operator-") +
               (direction == Direction::Convex ? "convex:" : "concave:") + f.spec_string();
    return detail::run_campaign(std::move(name), cfg, trial);
}

inline ProbeReport probe_operator_convexity(const ScalarFnPtr& f, Direction direction,
                                            const ProbeConfig& cfg, std::string name = "") {
    return probe_operator_convexity(*f, direction, cfg, std::move(name));
}

// Eq. (1.2) check on a two-variable map. A-side sampled from cfg.spectrum;
// B-side dominated against h(A) so the inner argument's spectrum starts in
// cfg.ratio (and, for h = t^beta with beta in [0,1], stays below ratio.hi
// under convex combinations).
inline ProbeReport probe_joint(const JointMap& map, Direction direction, const ProbeConfig& cfg,
                               std::string name = "") {
    if (!map.f->domain().contains(Interval::closed(cfg.ratio.lo, cfg.ratio.hi)))
        throw DomainMismatch("probe_joint: ratio " +
                             Interval::closed(cfg.ratio.lo, cfg.ratio.hi).to_string() +
                             " not contained in domain of " + map.f->spec_string());
    if (map.h && !map.h->domain().contains(Interval::closed(cfg.spectrum.lo, cfg.spectrum.hi)))
        throw DomainMismatch("probe_joint: spectrum not contained in domain of " +
                             map.h->spec_string());

    auto trial = [&](std::size_t dim, std::size_t idx, SplitMix64& rng) {
        SymmetricMatrix a1 = random_spd(dim, cfg.spectrum, rng);
        SymmetricMatrix a2 = random_spd(dim, cfg.spectrum, rng);
        SymmetricMatrix ha1 = map.h ? apply_spectral(*map.h, a1) : a1;
        SymmetricMatrix ha2 = map.h ? apply_spectral(*map.h, a2) : a2;
        SymmetricMatrix b1 = random_spd_dominated(ha1, cfg.ratio, rng);
        SymmetricMatrix b2 = random_spd_dominated(ha2, cfg.ratio, rng);
        const double c = detail::draw_weight(cfg, idx, rng);
        SymmetricMatrix ma = a1 * c + a2 * (1.0 - c);
        SymmetricMatrix mb = b1 * c + b2 * (1.0 - c);
        SymmetricMatrix lhs = map.eval(ma, mb);
        SymmetricMatrix combo = map.eval(a1, b1) * c + map.eval(a2, b2) * (1.0 - c);
        detail::TrialOutcome out;
        out.c = c;
        out.res = direction == Direction::Convex ? loewner_leq(lhs, combo, cfg.tol_rel)
                                                 : loewner_leq(combo, lhs, cfg.tol_rel);
        out.witnesses = {{"A1", a1}, {"A2", a2}, {"B1", b1}, {"B2", b2}};
        return out;
    };

    if (name.empty()) name = std::string(to_string(direction)) + ":" + map.name;
    return detail::run_campaign(std::move(name), cfg, trial);
}

// Corollary 3.8 / Theorem 3.9 convexity probe with conservative J_alpha
// confinement: the A-spectrum, the inner argument, and B's own spectrum are
// all kept inside [0, jq_upper(alpha)], padding the ratio by 10% against the
// boundary (both directly and through ||h(A)|| = spectrum.hi^beta).
inline ProbeReport probe_sq_with_domain(double alpha, double beta, const ProbeConfig& cfg,
                                        std::string name = "") {
    const double u = jq_upper(alpha);
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ParameterOutOfRange("probe_sq_with_domain: beta must lie in [0, 1]");
    const Interval j = Interval::closed(0.0, u);
    if (!(cfg.spectrum.lo > 0.0) ||
        !j.contains(Interval::closed(cfg.spectrum.lo, cfg.spectrum.hi)))
        throw DomainMismatch("probe_sq_with_domain: spectrum must lie inside (0, " +
                             detail::format_double(u) + "]");
    if (!(cfg.ratio.lo > 0.0) || !j.contains(Interval::closed(cfg.ratio.lo, cfg.ratio.hi)))
        throw DomainMismatch("probe_sq_with_domain: ratio must lie inside (0, " +
                             detail::format_double(u) + "]");

    const double cap = 0.9 * u / std::pow(cfg.spectrum.hi, beta);
    const double hi_eff = std::min({cfg.ratio.hi, 0.9 * u, cap});
    if (!(hi_eff >= cfg.ratio.lo))
        throw DomainMismatch("probe_sq_with_domain: padded ratio bound " +
                             detail::format_double(hi_eff) + " fell below ratio.lo = " +
                             detail::format_double(cfg.ratio.lo));
    ProbeConfig confined = cfg;
    confined.ratio = Interval::closed(cfg.ratio.lo, hi_eff);

    JointMap map = beta == 1.0 ? joint_map(EntropySpec::generalized_relative(alpha))
                               : joint_map(EntropySpec::relative_alpha_beta(alpha, beta));
    if (name.empty()) name = "J-confined:Convex:" + map.name;
    return probe_joint(map, Direction::Convex, confined, std::move(name));
}

inline ProbeReport probe_sq_with_domain(double q, const ProbeConfig& cfg,
                                        std::string name = "") {
    return probe_sq_with_domain(q, 1.0, cfg, std::move(name));
}

enum class ScanFamily { TsallisAlphaBeta, RelativeAlphaBeta };

enum class RegionVerdict { ConvexConsistent, ConcaveConsistent, Both, Neither };

inline const char* to_string(RegionVerdict v) {
    switch (v) {
        case RegionVerdict::ConvexConsistent: return "ConvexConsistent";
        case RegionVerdict::ConcaveConsistent: return "ConcaveConsistent";
        case RegionVerdict::Both: return "Both";
        case RegionVerdict::Neither: return "Neither";
    }
    return "Neither";
}

struct ScanCell {
    double alpha = 0.0;
    double beta = 0.0;
    RegionVerdict verdict = RegionVerdict::Neither;
    double worst_convex_margin = 0.0;
    double worst_concave_margin = 0.0;
};

// Probes both directions at trials/10 per (alpha, beta) cell and classifies.
inline std::vector<ScanCell> scan_regions(ScanFamily family,
                                          const std::vector<double>& alpha_grid,
                                          const std::vector<double>& beta_grid,
                                          const ProbeConfig& cfg) {
    if (alpha_grid.empty() || beta_grid.empty())
        throw ParameterOutOfRange("scan_regions: grids must be nonempty");
    if (family == ScanFamily::TsallisAlphaBeta)
        for (double a : alpha_grid)
            if (a == 0.0)
                throw ParameterOutOfRange("scan_regions: alpha = 0 is invalid for Tab");

    ProbeConfig cell_cfg = cfg;
    cell_cfg.trials = std::max<std::size_t>(1, cfg.trials / 10);

    std::vector<ScanCell> out;
    out.reserve(alpha_grid.size() * beta_grid.size());
    for (double a : alpha_grid) {
        for (double b : beta_grid) {
            EntropySpec es = family == ScanFamily::TsallisAlphaBeta
                                 ? EntropySpec::tsallis_alpha_beta(a, b)
                                 : EntropySpec::relative_alpha_beta(a, b);
            JointMap map = joint_map(es);
            ProbeReport conv = probe_joint(map, Direction::Convex, cell_cfg);
            ProbeReport conc = probe_joint(map, Direction::Concave, cell_cfg);
            ScanCell cell;
            cell.alpha = a;
            cell.beta = b;
            cell.worst_convex_margin = conv.worst_margin;
            cell.worst_concave_margin = conc.worst_margin;
            const bool cv = conv.verdict == Verdict::Consistent;
            const bool cc = conc.verdict == Verdict::Consistent;
            cell.verdict = cv && cc   ? RegionVerdict::Both
                           : cv       ? RegionVerdict::ConvexConsistent
                           : cc       ? RegionVerdict::ConcaveConsistent
                                      : RegionVerdict::Neither;
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace opent
